"""Degree coverage of the recursive d-regular PST family, with property checks."""

from hadpst import families

for k in (3, 4, 5):
    print(f"graphs on {2 ** k} vertices")
    for deg in range(k + 1, 2 ** k - 1):
        g, rep = families.regular_family(k, deg)
        props = families.family_properties(g, deg)
        status = "ok" if all(props.values()) else f"FAILED {props}"
        how = rep.rule.split("; ", 1)[1]
        print(f"    degree {deg:2d}: {how:<40s} first pair {rep.pairs[0]}  {status}")

print("plain interval union for k = 3 misses:",
      sorted(set(range(5, 15)) - families.degree_coverage(3, with_extras=False)))
