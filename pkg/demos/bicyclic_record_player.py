"""Play the bicyclic monoid on the seven-relation semigroup.

Builds every level of the encoding for <b, c | bc = 1>, then turns the
one-step derivation bc => 1 into a certificate in C^(0) and replays it.
"""

from stylus import (CompileContext, Derivation, DerivationStep, build_pipeline, check_derivation,
                    compile_source_equality, format_presentation, get_named)
from stylus.presentations import dump_certificate
from stylus.words import format_word

bicyclic = get_named("bicyclic").presentation

# The shared-boundary record is short but lacks the padding the compiler needs.
shown = build_pipeline(bicyclic, 0, mode="paper")
print(format_presentation(shown.augmented))
print(format_presentation(shown.encoded))
print("record:", format_word(shown.record))

bundle = build_pipeline(bicyclic, 0)
print("padded record:", format_word(bundle.record), f"({len(bundle.record)} letters)")

ctx = CompileContext.for_bundle(bundle)
source = Derivation(bicyclic, ("b", "c"), (DerivationStep(0, True, 0),), ())
cert = compile_source_equality(ctx, source)

report = check_derivation(cert)
S = len(bundle.record)
print(f"{len(cert)} steps, checker ok={report.ok}")
print("start tail:", format_word(cert.start[S:]))
print("end tail:  ", format_word(cert.end[S:]))
print("phase sizes:", dict(ctx.stats))

with open("bicyclic_cert.json", "w") as fh:
    fh.write(dump_certificate(cert))
print("wrote bicyclic_cert.json; check it with: stylus verify bicyclic_cert.json")
