"""Tokenization, sentence segmentation and stopword handling.

Every later stage (corpus statistics, embeddings lookup, keyword scoring,
ROUGE) sees text through the functions here, so a single
:class:`TokenizerConfig` fixes how words are cut, normalized and case-folded
everywhere. The config's :attr:`TokenizerConfig.fingerprint` is stored next
to artifacts built with it so mismatched pipelines can be detected.
"""

import dataclasses
import functools
import hashlib
import json
import unicodedata
from typing import TYPE_CHECKING

from oslo_log import log
from oslo_utils import encodeutils
from oslo_utils import fileutils

from conceptsum.common import exception

if TYPE_CHECKING:
    from typing import Iterable, Iterator, Optional, Union

LOG = log.getLogger(__name__)

FINGERPRINT_VERSION = 1

NORMALIZE_FORMS = ("NFC", "NFD", "NFKC", "NFKD")

# Whitespace, control characters and every punctuation category.
DEFAULT_SEPARATOR_CLASSES = frozenset(["Zs", "Zl", "Zp", "Cc", "P"])
DEFAULT_SENTENCE_TERMINATORS = frozenset([".", "!", "?", "؟", "۔", "\n"])

_CATEGORIES = frozenset(
    [
        "Lu", "Ll", "Lt", "Lm", "Lo", "Mn", "Mc", "Me", "Nd", "Nl", "No",
        "Pc", "Pd", "Ps", "Pe", "Pi", "Pf", "Po", "Sm", "Sc", "Sk", "So",
        "Zs", "Zl", "Zp", "Cc", "Cf", "Cs", "Co", "Cn",
    ]
)  # fmt: skip
_MAJOR_CLASSES = frozenset(c[0] for c in _CATEGORIES)


def codepoint(value: str) -> str:
    """Parse a ``U+XXXX`` codepoint (or a single literal character)."""
    if len(value) == 1:
        return value
    if value[:2].upper() == "U+":
        try:
            return chr(int(value[2:], 16))
        except ValueError:
            pass
    raise exception.InvalidParameterValue(
        msg=f"'{value}' is neither a single character nor a U+XXXX codepoint"
    )


def _codepoint_name(char: str) -> str:
    return f"U+{ord(char):04X}"


@dataclasses.dataclass(frozen=True)
class TokenizerConfig:
    """How text is cut into words and sentences.

    Attributes:
        separator_classes (frozenset[str]): Unicode general categories
            ("Zs"), major classes ("P") or codepoints ("U+00A0") whose
            characters break words.
        sentence_terminators (frozenset[str]): Characters ending a sentence.
            Terminators also break words.
        case_fold (bool): Whether surfaces are case-folded.
        normalize_form (str): Unicode normalization form, or None.
    """

    separator_classes: "frozenset[str]" = DEFAULT_SEPARATOR_CLASSES
    sentence_terminators: "frozenset[str]" = DEFAULT_SENTENCE_TERMINATORS
    case_fold: bool = True
    normalize_form: "Optional[str]" = "NFC"

    def __post_init__(self):
        classes = set()
        for entry in self.separator_classes:
            if entry in _CATEGORIES or entry in _MAJOR_CLASSES:
                classes.add(entry)
            else:
                classes.add(_codepoint_name(codepoint(entry)))
        object.__setattr__(self, "separator_classes", frozenset(classes))

        terminators = frozenset(codepoint(t) for t in self.sentence_terminators)
        if not terminators:
            raise exception.InvalidParameterValue(
                msg="At least one sentence terminator is required."
            )
        object.__setattr__(self, "sentence_terminators", terminators)

        form = self.normalize_form
        if form in ("", "none", "None"):
            form = None
        if form is not None and form not in NORMALIZE_FORMS:
            raise exception.InvalidParameterValue(
                msg=f"Unknown Unicode normalization form '{form}'"
            )
        object.__setattr__(self, "normalize_form", form)

    @classmethod
    def from_conf(cls, conf) -> "TokenizerConfig":
        """Build the config described by the [tokenizer] option group."""
        group = conf.tokenizer
        return cls(
            separator_classes=frozenset(group.separator_classes),
            sentence_terminators=frozenset(group.sentence_terminators),
            case_fold=group.case_fold,
            normalize_form=group.normalize_form,
        )

    def canonical(self) -> str:
        """A stable serialization of every setting that affects tokens."""
        return json.dumps(
            {
                "version": FINGERPRINT_VERSION,
                "separator_classes": sorted(self.separator_classes),
                "sentence_terminators": sorted(
                    _codepoint_name(t) for t in self.sentence_terminators
                ),
                "case_fold": self.case_fold,
                "normalize_form": self.normalize_form,
            },
            sort_keys=True,
            separators=(",", ":"),
        )

    @property
    def fingerprint(self) -> str:
        digest = hashlib.sha256(self.canonical().encode("utf-8")).hexdigest()
        return f"tok{FINGERPRINT_VERSION}-{digest[:16]}"

    def is_break(self, char: str) -> bool:
        return _break_table(self)(char)

    def is_terminator(self, char: str) -> bool:
        return char in self.sentence_terminators


@functools.lru_cache(maxsize=32)
def _break_table(config: TokenizerConfig):
    classes = config.separator_classes

    @functools.lru_cache(maxsize=4096)
    def _is_break(char):
        if config.is_terminator(char):
            return True
        category = unicodedata.category(char)
        return (
            category in classes
            or category[0] in classes
            or _codepoint_name(char) in classes
        )

    return _is_break


@dataclasses.dataclass(frozen=True)
class Token:
    """A word of the source text.

    ``char_span`` holds codepoint offsets into the source string, so
    ``text[start:end]`` is the surface before normalization and folding.
    """

    surface: str
    char_span: "tuple[int, int]"

    @property
    def start(self) -> int:
        return self.char_span[0]

    @property
    def end(self) -> int:
        return self.char_span[1]


@dataclasses.dataclass(frozen=True)
class SentenceSpan:
    index: int
    tokens: "tuple[Token, ...]"
    char_span: "tuple[int, int]"

    @property
    def surfaces(self) -> "list[str]":
        return [t.surface for t in self.tokens]

    def __len__(self):
        return len(self.tokens)


@dataclasses.dataclass(frozen=True)
class StopwordSet:
    words: "frozenset[str]" = frozenset()
    source_fingerprint: str = ""

    def __contains__(self, word):
        return word in self.words

    def __len__(self):
        return len(self.words)

    @classmethod
    def from_words(
        cls, words: "Iterable[str]", config: "Optional[TokenizerConfig]" = None
    ) -> "StopwordSet":
        config = config or TokenizerConfig()
        folded = frozenset(fold(w, config) for w in words if w)
        digest = hashlib.sha256("\n".join(sorted(folded)).encode("utf-8"))
        return cls(words=folded, source_fingerprint=digest.hexdigest())


def fold(word: str, config: TokenizerConfig) -> str:
    """Apply the config's normalization and case folding to a word."""
    if config.normalize_form:
        word = unicodedata.normalize(config.normalize_form, word)
    if config.case_fold:
        word = word.casefold()
    return word


def ensure_text(text: "Union[str, bytes]", source="input") -> str:
    """Return ``text`` as a valid Unicode string.

    Raises:
        DecodingError: if ``text`` is bytes that are not UTF-8, or a string
            containing lone surrogates.
    """
    if isinstance(text, bytes):
        try:
            return encodeutils.safe_decode(text, incoming="utf-8", errors="strict")
        except UnicodeDecodeError as exc:
            raise exception.DecodingError(source=source, reason=exc)
    try:
        text.encode("utf-8")
    except UnicodeEncodeError as exc:
        raise exception.DecodingError(source=source, reason=exc)
    return text


def read_document(path) -> str:
    """Read a UTF-8 document from disk."""
    try:
        with open(path, "rb") as f:
            data = f.read()
    except FileNotFoundError:
        raise exception.ResourceNotFound(resource="Document", path=path)
    return ensure_text(data, source=str(path))


def _scan(text: str, config: TokenizerConfig) -> "Iterator[tuple]":
    """Yield ("token", start, end) and ("end", position) events in order.

    An "end" event follows each run of sentence terminators.
    """
    is_break = _break_table(config)
    start = None
    in_terminators = False
    for i, char in enumerate(text):
        if is_break(char):
            if start is not None:
                yield ("token", start, i)
                start = None
            if config.is_terminator(char):
                in_terminators = True
                continue
        elif start is None:
            start = i
        if in_terminators:
            yield ("end", i)
            in_terminators = False
    if start is not None:
        yield ("token", start, len(text))
    if in_terminators:
        yield ("end", len(text))


def _tokens(text, start, end, config) -> "Iterator[Token]":
    """Yield the tokens of the word ``text[start:end]``.

    Normalization can introduce break characters (NFKC turns a parenthesized
    digit into "(1)"), so the folded surface is split again. Every piece keeps
    the span of the source word.
    """
    is_break = _break_table(config)
    piece = []
    for char in fold(text[start:end], config):
        if is_break(char):
            if piece:
                yield Token(surface="".join(piece), char_span=(start, end))
                piece = []
        else:
            piece.append(char)
    if piece:
        yield Token(surface="".join(piece), char_span=(start, end))


def tokenize_words(text: "Union[str, bytes]", config: TokenizerConfig) -> "list[Token]":
    """Split text into word tokens.

    Args:
        text: The source text. Bytes are decoded as strict UTF-8.
        config: The tokenizer config.

    Returns:
        Tokens in textual order.

    Raises:
        DecodingError: if the text is not valid Unicode.
    """
    text = ensure_text(text)
    tokens = []
    for event in _scan(text, config):
        if event[0] == "token":
            tokens.extend(_tokens(text, event[1], event[2], config))
    return tokens


def split_sentences(
    text: "Union[str, bytes]", config: TokenizerConfig
) -> "list[SentenceSpan]":
    """Split text into sentences of word tokens.

    A sentence ends after a run of terminator characters; a trailing segment
    without a terminator still forms a sentence. Segments holding no token
    (e.g. a stray "...") are dropped, so the sentences' tokens are exactly
    :func:`tokenize_words` of the same text.

    Raises:
        DecodingError: if the text is not valid Unicode.
    """
    text = ensure_text(text)
    sentences = []
    current = []

    def _close(end):
        # Terminator runs may include line breaks; keep them out of the span.
        floor = current[-1].end if current else 0
        while end > floor and text[end - 1].isspace():
            end -= 1
        if current:
            sentences.append(
                SentenceSpan(
                    index=len(sentences),
                    tokens=tuple(current),
                    char_span=(current[0].start, end),
                )
            )
            current.clear()

    for event in _scan(text, config):
        if event[0] == "token":
            current.extend(_tokens(text, event[1], event[2], config))
        else:
            _close(event[1])
    if current:
        _close(current[-1].end)
    return sentences


def filter_stopwords(tokens: "Iterable[Token]", stops: StopwordSet) -> "list[Token]":
    """Drop tokens whose surface is a stopword, preserving order."""
    return [t for t in tokens if t.surface not in stops.words]


def load_stopwords(path, config: TokenizerConfig) -> StopwordSet:
    """Load a stopword list file.

    The file is UTF-8 with one word per line; blank lines and lines starting
    with '#' are ignored.

    Raises:
        ResourceNotFound: if the file does not exist.
        DecodingError: if the file is not UTF-8.
        StopwordParseError: if a line holds more than one word.
    """
    try:
        with open(path, "rb") as f:
            data = f.read()
    except FileNotFoundError:
        raise exception.ResourceNotFound(resource="Stopword list", path=path)
    content = ensure_text(data, source=str(path))

    words = set()
    for lineno, line in enumerate(content.splitlines(), start=1):
        word = line.strip()
        if not word or word.startswith("#"):
            continue
        if len(word.split()) > 1:
            raise exception.StopwordParseError(
                path=path, line=lineno, reason="expected one word per line"
            )
        words.add(fold(word, config))

    stops = StopwordSet(
        words=frozenset(words),
        source_fingerprint=fileutils.compute_file_checksum(path, algorithm="sha256"),
    )
    LOG.debug("Loaded %d stopwords from %s", len(stops), path)
    return stops


def write_stopwords(path, words: "Iterable[str]", header: "Iterable[str]" = ()):
    """Write a stopword list in the format :func:`load_stopwords` reads."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_stopwords(words, header))


def format_stopwords(words: "Iterable[str]", header: "Iterable[str]" = ()) -> str:
    lines = [f"# {line}" for line in header]
    lines.extend(sorted(set(words)))
    return "".join(f"{line}\n" for line in lines)
