import inspect
from functools import wraps

from conceptsum.common import exception


def positive_int(name, value) -> int:
    """Validate that the value is an integer >= 1

    Args:
        name (str): Name of the argument
        value (any): The value to check

    Returns:
        The value.

    Raises:
        InvalidParameterValue: if the value is not a positive integer.
    """
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise exception.InvalidParameterValue(
            ("Expected a positive integer for %s: %r") % (name, value)
        )
    return value


def ratio(name, value) -> float:
    """Validate that the value is a real number in the half-open range (0, 1]."""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise exception.InvalidParameterValue(
            ("Expected a number for %s: %r") % (name, value)
        )
    if not 0.0 < value <= 1.0:
        raise exception.InvalidParameterValue(
            ("%s must be in (0, 1], got %r") % (name, value)
        )
    return float(value)


def choice(*values):
    """Return a validator accepting only one of ``values``."""

    def _validate_choice(name, value):
        if value not in values:
            raise exception.InvalidParameterValue(
                ("%s must be one of %s, got %r") % (name, ", ".join(values), value)
            )
        return value

    return _validate_choice


# Some JSON schema helpers
STRING = {"type": "string"}
NON_EMPTY_STRING = {"type": "string", "minLength": 1}
NON_NEGATIVE_INTEGER = {"type": "integer", "minimum": 0}
POSITIVE_INTEGER = {"type": "integer", "minimum": 1}


def enum(values, type="string"):
    return {"type": type, "enum": values}


def array(schema, min_items=0):
    return {"type": "array", "items": schema, "minItems": min_items}


def _inspect(function):
    sig = inspect.signature(function)
    params = []

    for param in sig.parameters.values():
        if param.kind == inspect.Parameter.POSITIONAL_OR_KEYWORD:
            params.append(param)
        else:
            assert False, "Unsupported parameter kind %s %s" % (param.name, param.kind)
    return params


def validate(*args, **kwargs):
    """Decorator which validates and transforms function arguments"""
    assert not args, "Validators must be specifed by argument name"
    assert kwargs, "No validators specified"
    validators = kwargs

    def inner_function(function):
        params = _inspect(function)

        @wraps(function)
        def inner_check_args(*args, **kwargs):
            args = list(args)
            kwargs_next = {}

            # ensure each named argument belongs to a param
            kwarg_keys = set(kwargs)
            param_names = set(p.name for p in params)
            extra_args = kwarg_keys - param_names
            if extra_args:
                raise exception.InvalidParameterValue(
                    ("Unexpected arguments: %s") % ", ".join(extra_args)
                )

            args_len = len(args)

            for i, param in enumerate(params):
                val_function = validators.get(param.name)
                if not val_function:
                    if param.name in kwargs:
                        kwargs_next[param.name] = kwargs.pop(param.name)
                    continue

                if i < args_len:
                    # validate positional argument
                    args[i] = val_function(param.name, args[i])
                elif param.name in kwargs:
                    # validate keyword argument
                    kwargs_next[param.name] = val_function(
                        param.name, kwargs.pop(param.name)
                    )
                elif param.default == inspect.Parameter.empty:
                    # no argument was provided, and there is no default
                    # in the parameter, so this is a mandatory argument
                    raise exception.MissingParameterValue(
                        ("Missing mandatory parameter: %s") % param.name
                    )
                else:
                    kwargs_next[param.name] = val_function(param.name, param.default)

            return function(*args, **kwargs_next)

        return inner_check_args

    return inner_function
