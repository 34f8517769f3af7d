"""Reduce S . encode(y bc y) all the way down to aaa in C^(1,0).

The extra letter y has rank 0, so encode(yy) = aaa, and the two wipe
relations erase the record once the bc in the middle has cancelled.
"""

from stylus import (CompileContext, Derivation, DerivationStep, build_pipeline, check_derivation,
                    compile_specific, get_named)
from stylus.encoder import free_product_with_free_generator
from stylus.words import format_word

bicyclic = get_named("bicyclic").presentation
extended = free_product_with_free_generator(bicyclic, "y")
bundle = build_pipeline(extended, 1, rank={"y": 0})
ctx = CompileContext.for_bundle(bundle, 0)

print("target:", ctx.presentation.name)
for rel in ctx.presentation.relations[7:]:
    print("  wipe:", rel)

source = Derivation(bicyclic, ("b", "c"), (DerivationStep(0, True, 0),), ())
cert = compile_specific(ctx, source)
print(f"{len(format_word(cert.start).split())}-letter start, {len(cert)} steps")
print("end:", format_word(cert.end), "checker ok:", check_derivation(cert).ok)
for phase, n in ctx.stats.items():
    print(f"  {phase:10s} {n}")
