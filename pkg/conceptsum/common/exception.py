from oslo_log import log

from conceptsum.conf import CONF

LOG = log.getLogger(__name__)

# Exit codes shared by every command.
EXIT_OK = 0
EXIT_RESOURCE_ERROR = 1
EXIT_EMPTY_RESULT = 2


class SummarizerException(Exception):
    """Base conceptsum exception

    To correctly use this class, inherit from it and define a '_msg_fmt'
    property. That message will get printf'd with the keyword arguments provided
    to the constructor.

    Attributes:
        exit_code (int): The process exit status a command should return when
            this error ends it.
    """

    _msg_fmt = "An unknown exception occurred."
    exit_code = EXIT_RESOURCE_ERROR

    def __init__(self, message=None, **kwargs):
        self.kwargs = kwargs

        if not message:
            try:
                message = self._msg_fmt % kwargs

            except Exception as e:
                # kwargs doesn't match a variable in self._msg_fmt
                # log the issue and the kwargs
                prs = ", ".join("%s: %s" % pair for pair in kwargs.items())
                LOG.exception(
                    "Exception in string format operation " "(arguments %s)", prs
                )
                if CONF.fatal_exception_format_errors:
                    raise e
                else:
                    # at least get the core self._msg_fmt out if something
                    # happened
                    message = self._msg_fmt

        super(SummarizerException, self).__init__(message)

    def __str__(self):
        return str(self.args[0])


class Invalid(SummarizerException):
    _msg_fmt = "Unacceptable parameters."


class NotFound(SummarizerException):
    _msg_fmt = "Resource could not be found."


class EmptyResult(SummarizerException):
    _msg_fmt = "Nothing to report."
    exit_code = EXIT_EMPTY_RESULT


class InvalidParameterValue(Invalid):
    _msg_fmt = "%(msg)s"


class MissingParameterValue(Invalid):
    _msg_fmt = "%(msg)s"


class ContractViolation(Invalid):
    _msg_fmt = "%(msg)s"


class DecodingError(Invalid):
    _msg_fmt = "Could not decode %(source)s as UTF-8: %(reason)s"


class ParseError(Invalid):
    _msg_fmt = "%(path)s, line %(line)s: %(reason)s"


class StatsParseError(ParseError):
    _msg_fmt = "Malformed corpus statistics %(path)s, %(where)s: %(reason)s"


class EmbeddingParseError(ParseError):
    _msg_fmt = "Malformed embedding file %(path)s, line %(line)s: %(reason)s"


class DimensionMismatch(Invalid):
    _msg_fmt = (
        "Expected %(expected)s-dimensional vectors, found %(actual)s (%(where)s)."
    )


class UndefinedSimilarity(Invalid):
    _msg_fmt = "Cosine similarity is undefined for a zero vector."


class EmptyCandidates(Invalid):
    _msg_fmt = "There are no candidate words to compare against."


class TooFewPoints(Invalid):
    _msg_fmt = "Cannot seed %(centers)s clusters with only %(points)s points."


class EmptyCorpus(Invalid):
    _msg_fmt = "Cannot build corpus statistics from an empty corpus."


class IncompatibleStats(Invalid):
    _msg_fmt = (
        "Tokenizer fingerprint %(expected)s does not match %(actual)s; "
        "rebuild the statistics with the same tokenizer settings."
    )


class ResourceNotFound(NotFound):
    _msg_fmt = "%(resource)s %(path)s could not be found."


class MissingReferences(NotFound):
    _msg_fmt = "No reference summaries found for: %(documents)s"


class NoScoreableTerms(EmptyResult):
    _msg_fmt = (
        "Document %(document)s has no term that is a non-stopword present in "
        "both the corpus statistics and the embedding table."
    )


class EmptyDocument(EmptyResult):
    _msg_fmt = "Document %(document)s contains no sentences."


class DriverNotFound(Invalid):
    _msg_fmt = "Could not find the following driver(s): %(driver_name)s."


class DriverNotFoundInEntrypoint(DriverNotFound):
    _msg_fmt = (
        "Could not find the following items in the "
        "'%(entrypoint)s' entrypoint: %(names)s."
    )


class DriverLoadError(SummarizerException):
    _msg_fmt = "Driver %(driver)s could not be loaded. Reason: %(reason)s."


class StopwordParseError(ParseError):
    _msg_fmt = "Malformed stopword list %(path)s, line %(line)s: %(reason)s"
