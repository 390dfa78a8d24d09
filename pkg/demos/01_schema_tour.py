"""Tour of the dialogue-act registry.

The inventory groups 25 acts into three dimensions. Lookups are
forgiving about spelling: case, hyphens, underscores and spaces are
ignored, so the historical "SelfIntroduce" spelling still resolves.
"""

from dialact import Dimension, builtin_schema

schema = builtin_schema()
print(f"registry '{schema.name}' holds {len(schema)} acts\n")

for dimension in Dimension:
    acts = schema.acts_in(dimension)
    print(f"{dimension.value} ({len(acts)} acts)")
    for act in acts:
        print(f"  {act.name:<22} {act.definition}")
    print()

# Agree and Disagree aggregate finer-grained functions
for name in ("Agree", "Disagree"):
    act = schema.lookup(name)
    print(f"{act.name} covers: {', '.join(act.subfunctions)}")

print()
for variant in ("SelfIntroduce", "self-introduce", "SELF INTRODUCE"):
    act = schema.lookup(variant)
    print(f"lookup({variant!r}) -> {act.name} [{act.dimension}]")

print(f"lookup('Nonexistent-Act') -> {schema.lookup('Nonexistent-Act')}")
