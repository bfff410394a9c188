"""JSON and CSV encodings for presentations, morphisms and results.

Presentation documents are tagged by ``"type"``::

    {"type": "full", "alphabet": ["a1", "a2"]}
    {"type": "sft", "alphabet": [...], "forbidden": [["a2", "a2"], ...]}
    {"type": "substitution", "morphism": {"a1": ["a2"], "a2": ["a2", "a1"]}}
    {"type": "image", "inner": {...}, "morphism": {...}}
    {"type": "double", "inner": {...}}

A morphism is either a bare map ``symbol -> list of symbols`` or a
wrapper ``{"source": [...], "target": [...], "images": {...}}``.
Free group homomorphisms use the same shapes with ``"^-1"`` marking
inverse letters.  All emitted collections are sorted by symbol names.
"""

from __future__ import annotations

import json
from typing import Any

from .freegroup import FreeGroupHom
from .morphisms import Morphism
from .recognizability import PairWitness, PeriodicWitness, RecognizabilityCertificate
from .subshifts import SFT, Double, FullShift, MorphicImage, PrimitiveSubstitution, Subshift
from .words import Alphabet


class FormatError(ValueError):
    """Malformed input document."""


def _alphabet(doc, key="alphabet") -> Alphabet:
    try:
        return Alphabet(doc[key])
    except KeyError:
        raise FormatError(f"missing {key!r}") from None


def morphism_from_json(doc: Any, source: Alphabet | None = None) -> Morphism:
    if not isinstance(doc, dict):
        raise FormatError("a morphism must be a JSON object")
    if "images" in doc:
        src = Alphabet(doc["source"]) if "source" in doc else source
        tgt = Alphabet(doc["target"]) if "target" in doc else None
        images = doc["images"]
    else:
        src, tgt, images = source, None, doc
    if not isinstance(images, dict):
        raise FormatError("morphism images must be a JSON object")
    return Morphism.from_dict(images, source=src, target=tgt)


def morphism_to_json(sigma: Morphism) -> dict:
    return {
        "source": list(sigma.source.symbols),
        "target": list(sigma.target.symbols),
        "images": sigma.to_dict(),
    }


def subshift_from_json(doc: Any) -> Subshift:
    if not isinstance(doc, dict) or "type" not in doc:
        raise FormatError("a presentation must be a JSON object with a 'type'")
    kind = doc["type"]
    if kind == "full":
        return FullShift(_alphabet(doc))
    if kind == "sft":
        A = _alphabet(doc)
        forbidden = doc.get("forbidden", [])
        return SFT.from_words(A, [w if isinstance(w, str) else A.word(w) for w in forbidden])
    if kind == "substitution":
        m = doc["morphism"]
        images = m.get("images", m) if isinstance(m, dict) else m
        if not isinstance(images, dict):
            raise FormatError("substitution images must be a JSON object")
        A = Alphabet(doc["alphabet"]) if "alphabet" in doc else Alphabet(images.keys())
        return PrimitiveSubstitution(Morphism.from_dict(images, source=A, target=A))
    if kind == "image":
        inner = subshift_from_json(doc["inner"])
        return MorphicImage(inner, morphism_from_json(doc["morphism"], inner.alphabet))
    if kind == "double":
        return Double(subshift_from_json(doc["inner"]))
    raise FormatError(f"unknown presentation type {kind!r}")


def subshift_to_json(X: Subshift) -> dict:
    if isinstance(X, FullShift):
        return {"type": "full", "alphabet": list(X.alphabet.symbols)}
    if isinstance(X, SFT):
        words = sorted([X.alphabet.symbols[a] for a in w] for w in X.forbidden)
        return {"type": "sft", "alphabet": list(X.alphabet.symbols), "forbidden": words}
    if isinstance(X, PrimitiveSubstitution):
        return {
            "type": "substitution",
            "alphabet": list(X.alphabet.symbols),
            "morphism": X.substitution.to_dict(),
        }
    if isinstance(X, MorphicImage):
        return {"type": "image", "inner": subshift_to_json(X.inner), "morphism": morphism_to_json(X.morphism)}
    if isinstance(X, Double):
        return {"type": "double", "inner": subshift_to_json(X.inner)}
    raise TypeError(f"cannot serialize {type(X).__name__}")


def hom_from_json(doc: Any, basis: Alphabet | None = None) -> FreeGroupHom:
    if not isinstance(doc, dict):
        raise FormatError("a homomorphism must be a JSON object")
    if "images" in doc:
        src = Alphabet(doc["source"]) if "source" in doc else basis
        tgt = Alphabet(doc["target"]) if "target" in doc else None
        images = doc["images"]
    else:
        src, tgt, images = basis, None, doc
    return FreeGroupHom.from_dict(images, source=src, target=tgt)


def hom_to_json(phi: FreeGroupHom) -> dict:
    return {
        "source": list(phi.source.positive.symbols),
        "target": list(phi.target.positive.symbols),
        "images": phi.to_dict(),
    }


def certificate_to_json(cert: RecognizabilityCertificate) -> dict:
    out: dict[str, Any] = {"verdict": cert.verdict.value}
    for key in ("r", "window", "r_max", "period_max"):
        value = getattr(cert, key)
        if value is not None:
            out[key] = value
    w = cert.witness
    if isinstance(w, PairWitness):
        out["witness"] = {
            "kind": "pair",
            "left": list(w.left.symbols),
            "right": list(w.right.symbols),
            "refutes": w.refutes,
        }
    elif isinstance(w, PeriodicWitness):
        out["witness"] = {
            "kind": "periodic",
            "x": list(w.x.symbols),
            "k": w.k,
            "x_prime": list(w.x_prime.symbols),
            "ell": w.ell,
            "reason": w.reason,
        }
    return out


def load_json(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def words_to_lines(words) -> str:
    """One word per line, symbols space separated, lexicographic by symbol names."""
    return "".join(" ".join(w.symbols) + "\n" for w in sorted(words, key=lambda w: w.symbols))
