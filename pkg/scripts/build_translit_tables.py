#!/usr/bin/env python3
"""Regenerate the bundled transliteration tables (data/tables/*.json).

Replacements are ASCII letters only; diacritics on source characters that
are combining marks (Arabic harakat, Hebrew niqqud, Devanagari nukta) are
removed by the diacritic-stripping pass and need no entries here. The
Arabic table deliberately omits Urdu-specific letters, which therefore
surface as "?" in transliterated Urdu text.
"""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "glossotype" / "data" / "tables"

GREEK = {
    "α": "a", "β": "b", "γ": "g", "δ": "d", "ε": "e", "ζ": "z", "η": "e",
    "θ": "th", "ι": "i", "κ": "k", "λ": "l", "μ": "m", "ν": "n", "ξ": "x",
    "ο": "o", "π": "p", "ρ": "r", "σ": "s", "ς": "s", "τ": "t", "υ": "u",
    "φ": "ph", "χ": "ch", "ψ": "ps", "ω": "o",
    "ά": "a", "έ": "e", "ή": "e", "ί": "i", "ό": "o", "ύ": "u", "ώ": "o",
    "ϊ": "i", "ϋ": "u", "ΐ": "i", "ΰ": "u",
    "Α": "A", "Β": "B", "Γ": "G", "Δ": "D", "Ε": "E", "Ζ": "Z", "Η": "E",
    "Θ": "Th", "Ι": "I", "Κ": "K", "Λ": "L", "Μ": "M", "Ν": "N", "Ξ": "X",
    "Ο": "O", "Π": "P", "Ρ": "R", "Σ": "S", "Τ": "T", "Υ": "U",
    "Φ": "Ph", "Χ": "Ch", "Ψ": "Ps", "Ω": "O",
    "Ά": "A", "Έ": "E", "Ή": "E", "Ί": "I", "Ό": "O", "Ύ": "U", "Ώ": "O",
    "Ϊ": "I", "Ϋ": "U",
}

# ISO 9 style with the diacritics already dropped, so "что" -> "cto" and
# "это" -> "eto"
CYRILLIC_LOWER = {
    "а": "a", "б": "b", "в": "v", "г": "g", "д": "d", "е": "e", "ё": "e",
    "ж": "z", "з": "z", "и": "i", "й": "j", "к": "k", "л": "l", "м": "m",
    "н": "n", "о": "o", "п": "p", "р": "r", "с": "s", "т": "t", "у": "u",
    "ф": "f", "х": "h", "ц": "c", "ч": "c", "ш": "s", "щ": "s", "ъ": "",
    "ы": "y", "ь": "", "э": "e", "ю": "u", "я": "a",
    "і": "i", "ї": "i", "є": "e", "ґ": "g", "ў": "u", "ђ": "d", "ј": "j",
    "љ": "l", "њ": "n", "ћ": "c", "џ": "d", "ѓ": "g", "ќ": "k", "ѕ": "z",
}

ARABIC = {
    "ا": "a", "ب": "b", "ت": "t", "ث": "th", "ج": "j", "ح": "h", "خ": "kh",
    "د": "d", "ذ": "dh", "ر": "r", "ز": "z", "س": "s", "ش": "sh", "ص": "s",
    "ض": "d", "ط": "t", "ظ": "z", "ع": "", "غ": "gh", "ف": "f", "ق": "q",
    "ك": "k", "ل": "l", "م": "m", "ن": "n", "ه": "h", "و": "w", "ي": "y",
    "ى": "a", "ة": "t", "ء": "", "آ": "a", "أ": "a", "إ": "a", "ؤ": "w",
    "ئ": "y",
    # Persian additions; Urdu-only letters are intentionally not covered
    "پ": "p", "چ": "ch", "ژ": "zh", "گ": "g", "ک": "k", "ی": "y",
}

HEBREW = {
    "א": "", "ב": "b", "ג": "g", "ד": "d", "ה": "h", "ו": "w", "ז": "z",
    "ח": "h", "ט": "t", "י": "y", "כ": "k", "ך": "k", "ל": "l", "מ": "m",
    "ם": "m", "נ": "n", "ן": "n", "ס": "s", "ע": "", "פ": "p", "ף": "p",
    "צ": "s", "ץ": "s", "ק": "q", "ר": "r", "ש": "sh", "ת": "t",
}

DEVANAGARI = {
    "अ": "a", "आ": "a", "इ": "i", "ई": "i", "उ": "u", "ऊ": "u", "ऋ": "r",
    "ए": "e", "ऐ": "ai", "ओ": "o", "औ": "au",
    "क": "k", "ख": "kh", "ग": "g", "घ": "gh", "ङ": "n", "च": "ch",
    "छ": "ch", "ज": "j", "झ": "jh", "ञ": "n", "ट": "t", "ठ": "th",
    "ड": "d", "ढ": "dh", "ण": "n", "त": "t", "थ": "th", "द": "d",
    "ध": "dh", "न": "n", "प": "p", "फ": "ph", "ब": "b", "भ": "bh",
    "म": "m", "य": "y", "र": "r", "ल": "l", "व": "v", "श": "sh",
    "ष": "sh", "स": "s", "ह": "h",
    "ा": "a", "ि": "i", "ी": "i", "ु": "u", "ू": "u", "ृ": "r",
    "े": "e", "ै": "ai", "ो": "o", "ौ": "au",
    "्": "", "ं": "m", "ँ": "n",
}


def korean() -> dict[str, str]:
    # Conjoining jamo, Revised Romanization. Syllable blocks are decomposed
    # into these code points before table matching.
    initials = ["g", "kk", "n", "d", "tt", "r", "m", "b", "pp", "s", "ss",
                "", "j", "jj", "ch", "k", "t", "p", "h"]
    medials = ["a", "ae", "ya", "yae", "eo", "e", "yeo", "ye", "o", "wa",
               "wae", "oe", "yo", "u", "wo", "we", "wi", "yu", "eu", "ui", "i"]
    finals = ["k", "k", "k", "n", "n", "n", "t", "l", "k", "m", "l", "l",
              "l", "p", "l", "m", "p", "p", "t", "t", "ng", "t", "t", "k",
              "t", "p", "t"]
    entries = {}
    for i, latin in enumerate(initials):
        entries[chr(0x1100 + i)] = latin
    for i, latin in enumerate(medials):
        entries[chr(0x1161 + i)] = latin
    for i, latin in enumerate(finals):
        entries[chr(0x11A8 + i)] = latin
    return entries


def write(name: str, script_name: str, entries: dict[str, str]) -> None:
    payload = {"script_name": script_name, "entries": sorted(entries.items())}
    path = OUT / f"{name}.json"
    path.write_text(json.dumps(payload, indent=1, ensure_ascii=True) + "\n", encoding="utf-8")
    print(f"wrote {path} ({len(entries)} entries)")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    cyrillic = dict(CYRILLIC_LOWER)
    for lower, latin in CYRILLIC_LOWER.items():
        cyrillic[lower.upper()] = latin.capitalize()
    write("greek", "Greek", GREEK)
    write("cyrillic", "Cyrillic", cyrillic)
    write("arabic", "Arabic", ARABIC)
    write("hebrew", "Hebrew", HEBREW)
    write("devanagari", "Devanagari", DEVANAGARI)
    write("korean", "Hangul", korean())


if __name__ == "__main__":
    main()
