"""Porter suffix-stripping stemmer.

Classic five-step algorithm in the reference-implementation variant that the
published test vocabulary corresponds to: step 2 maps bli->ble and logi->log,
and words of length <= 2 are returned unchanged. The frozen pairs in
resources/porter_pairs.tsv pin this behavior.
"""

from __future__ import annotations

_VOWELS = frozenset("aeiou")


def _cons(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return True if i == 0 else not _cons(word, i - 1)
    return True


def _measure(word: str, end: int | None = None) -> int:
    """Number of vowel-consonant sequences in word[:end]."""
    limit = len(word) if end is None else end
    m = 0
    prev_cons: bool | None = None
    for i in range(limit):
        cons = _cons(word, i)
        if prev_cons is False and cons:
            m += 1
        prev_cons = cons
    return m


def _has_vowel(word: str) -> bool:
    return any(not _cons(word, i) for i in range(len(word)))


def _doublec(word: str) -> bool:
    return len(word) >= 2 and word[-1] == word[-2] and _cons(word, len(word) - 1)


def _cvc_at(word: str, i: int) -> bool:
    if i < 2:
        return False
    if not _cons(word, i) or _cons(word, i - 1) or not _cons(word, i - 2):
        return False
    return word[i] not in "wxy"


def _step1a(w: str) -> str:
    if w.endswith("sses"):
        return w[:-2]
    if w.endswith("ies"):
        return w[:-2]
    if w.endswith("ss"):
        return w
    if w.endswith("s"):
        return w[:-1]
    return w


def _step1b(w: str) -> str:
    if w.endswith("eed"):
        return w[:-1] if _measure(w, len(w) - 3) > 0 else w
    for suffix in ("ed", "ing"):
        if w.endswith(suffix):
            stem = w[: -len(suffix)]
            if _has_vowel(stem):
                return _step1b_fixup(stem)
            return w
    return w


def _step1b_fixup(w: str) -> str:
    if w.endswith(("at", "bl", "iz")):
        return w + "e"
    if _doublec(w) and w[-1] not in "lsz":
        return w[:-1]
    if _measure(w) == 1 and _cvc_at(w, len(w) - 1):
        return w + "e"
    return w


def _step1c(w: str) -> str:
    if w.endswith("y") and _has_vowel(w[:-1]):
        return w[:-1] + "i"
    return w


# Conditional rewrite tables keyed by a dispatch character; within a group
# the first suffix that matches consumes the step, and the rewrite applies
# only when the measure condition holds on the stem before the suffix.
_STEP2 = {
    "a": (("ational", "ate"), ("tional", "tion")),
    "c": (("enci", "ence"), ("anci", "ance")),
    "e": (("izer", "ize"),),
    "l": (("bli", "ble"), ("alli", "al"), ("entli", "ent"), ("eli", "e"), ("ousli", "ous")),
    "o": (("ization", "ize"), ("ation", "ate"), ("ator", "ate")),
    "s": (("alism", "al"), ("iveness", "ive"), ("fulness", "ful"), ("ousness", "ous")),
    "t": (("aliti", "al"), ("iviti", "ive"), ("biliti", "ble")),
    "g": (("logi", "log"),),
}

_STEP3 = {
    "e": (("icate", "ic"), ("ative", ""), ("alize", "al")),
    "i": (("iciti", "ic"),),
    "l": (("ical", "ic"), ("ful", "")),
    "s": (("ness", ""),),
}

_STEP4 = {
    "a": ("al",),
    "c": ("ance", "ence"),
    "e": ("er",),
    "i": ("ic",),
    "l": ("able", "ible"),
    "n": ("ant", "ement", "ment", "ent"),
    "o": ("ion", "ou"),
    "s": ("ism",),
    "t": ("ate", "iti"),
    "u": ("ous",),
    "v": ("ive",),
    "z": ("ize",),
}


def _rewrite(w: str, table: dict, key_offset: int) -> str:
    if len(w) < 2:
        return w
    rules = table.get(w[key_offset])
    if rules is None:
        return w
    for suffix, replacement in rules:
        if w.endswith(suffix):
            stem = w[: -len(suffix)]
            if _measure(stem) > 0:
                return stem + replacement
            return w
    return w


def _step4(w: str) -> str:
    if len(w) < 2:
        return w
    rules = _STEP4.get(w[-2])
    if rules is None:
        return w
    for suffix in rules:
        if w.endswith(suffix):
            stem = w[: -len(suffix)]
            if suffix == "ion" and not stem.endswith(("s", "t")):
                continue
            if _measure(stem) > 1:
                return stem
            return w
    return w


def _step5(w: str) -> str:
    basis = w  # measure basis is fixed at entry
    if w.endswith("e"):
        a = _measure(w)
        if a > 1 or (a == 1 and not _cvc_at(w[:-1], len(w) - 2)):
            w = w[:-1]
    if w.endswith("ll") and _measure(basis) > 1:
        w = w[:-1]
    return w


def stem(word: str) -> str:
    """Stem one token. Lowercases first; raises ValueError on empty input."""
    if not word:
        raise ValueError("cannot stem an empty token")
    w = word.lower()
    if len(w) <= 2:
        return w
    w = _step1a(w)
    w = _step1b(w)
    w = _step1c(w)
    w = _rewrite(w, _STEP2, -2)
    w = _rewrite(w, _STEP3, -1)
    w = _step4(w)
    w = _step5(w)
    return w
