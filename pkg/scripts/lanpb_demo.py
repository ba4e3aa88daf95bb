"""Inverse homomorphism demo for the composite-count language over {a, b}.

phi maps a to a and erases b.  A word over {a, b} lies in the inverse image
of the composite-length language exactly when phi(w) is a derived word, so
membership is cheap.  The obvious attempt at a derivation for the inverse
image, taking inverse images of the two leaves, copies its b blocks along
with the a's, and the script shows what that costs: words whose gaps
between a's are pairwise distinct are in the inverse image but are never
derived.  This is a demonstration at small sizes, not a proof.
"""
import argparse

from iosub.analysis import (
    check_pattern, detect_copy_pattern, linearity_report, parikh_of_derivation,
)
from iosub.automata import format_word, nfa_inverse_homomorphism, parse_word, regex_to_nfa
from iosub.derivation import (
    EffectiveForm, Leaf, StandardDerivation, enumerate_words, member, prepare, subst,
)

PHI = {"a": ("a",), "b": ()}


def in_inverse_image(nprime, w):
    return member(nprime, tuple(c for s in w for c in PHI[s]))


def distinct_gaps(k):
    """a^k with gaps b^0, b^1, ..., b^k around and between the a's."""
    out = []
    for i in range(k):
        out += ["b"] * i + ["a"]
    return tuple(out + ["b"] * k)


def naive_derivation():
    base = nfa_inverse_homomorphism(regex_to_nfa("z z z*"), {"z": ("z",), "b": ()}, ["z", "b"])
    right = nfa_inverse_homomorphism(regex_to_nfa("a a a*"), PHI, ["a", "b"])
    return StandardDerivation(Leaf(base), (("z", Leaf(right)),))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-len", type=int, default=10, help="enumeration bound for the naive derivation")
    args = ap.parse_args(argv)

    nprime = prepare(subst("a a a*", "a", "a a a*"))
    print("composite counts up to 20:",
          [n for n in range(21) if member(nprime, ("a",) * n)])

    print("\nmembership in the inverse image (via phi):")
    for text in ["a b a b a b a", "b a a a a b", "a b a", "a a b a a a b b"]:
        w = parse_word(text)
        print(f"  {text!r:22} -> {in_inverse_image(nprime, w)}")

    naive = naive_derivation()
    ef = EffectiveForm((naive,))
    e = parikh_of_derivation(naive)
    rep = linearity_report(naive)
    print("\nnaive derivation:", naive)
    print("  Parikh image:", "; ".join(str(f) for f in e.components), "over", e.dims)
    print("  classes:", {k: str(v) for k, v in rep.dims.items()})
    wit = detect_copy_pattern(ef, "a")
    print("  copy witness:", wit)

    words = enumerate_words(naive, args.max_len)
    assert all(in_inverse_image(nprime, w) for w in words)
    with_pattern = sum(check_pattern(w, "a") for w in words)
    print(f"  {len(words)} words up to length {args.max_len}, all in the inverse image; "
          f"{with_pattern} show the repeated a w' a block")

    for k in (4, 6):
        w = distinct_gaps(k)
        print(f"\n  {format_word(w)!r}")
        print(f"    in inverse image: {in_inverse_image(nprime, w)}, "
              f"derived by the naive derivation: {member(naive, w)}, "
              f"repeated block: {check_pattern(w, 'a')}")


if __name__ == "__main__":
    main()
