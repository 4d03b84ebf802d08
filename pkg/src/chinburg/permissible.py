"""Seven-condition permissibility checker for P = a(x)(y^2+1) + b(x)y."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from chinburg.fields import (
    MultiquadraticFailure,
    Unsupported,
    conductor_set,
    conductors_of_group,
    _alpha_coordinates,
)
from chinburg.polyz import (
    DiscriminantSplit,
    IntPoly,
    detect_cyclotomic_product,
    discriminant,
    gh_split,
    poly_gcd,
    shifted_reciprocal_shift,
)
from chinburg.torus import RootType, ToricRootRecord, toric_roots_of_h


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not-applicable"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: str


@dataclass
class PermissibilityReport:
    a: IntPoly
    b: IntPoly
    conditions: dict[int, Verdict]
    ell: int | None = None
    split: DiscriminantSplit | None = None
    toric: list[ToricRootRecord] = field(default_factory=list)
    conductors: tuple[int, ...] = ()
    notes: list[str] = field(default_factory=list)

    @property
    def permissible(self) -> bool:
        return all(v.status in (Status.PASS, Status.NOT_APPLICABLE)
                   for v in self.conditions.values())

    @property
    def first_failure(self) -> int | None:
        for k in sorted(self.conditions):
            if self.conditions[k].status in (Status.FAIL, Status.UNSUPPORTED):
                return k
        return None

    def to_dict(self) -> dict:
        d = {
            "a": self.a.dumps(),
            "b": self.b.dumps(),
            "permissible": self.permissible,
            "ell": self.ell,
            "conductors": list(self.conductors),
            "conditions": {
                str(k): {"status": v.status.value, "witness": v.witness}
                for k, v in sorted(self.conditions.items())
            },
            "notes": list(self.notes),
        }
        if self.split is not None:
            d["g"] = self.split.g.dumps()
            d["h"] = self.split.h.dumps()
        d["toric_roots_of_h"] = [
            {
                "u": str(r.u_exact) if r.u_exact is not None else None,
                "u_interval": [str(r.u_interval[0]), str(r.u_interval[1])],
                "alpha_degree": r.alpha_degree if r.u_exact is not None else None,
                "mult_in_delta": r.mult_in_delta,
                "mult_in_h": r.mult_in_h,
                "kind": r.kind.value,
            }
            for r in self.toric
        ]
        return d


def _na(reason: str) -> Verdict:
    return Verdict(Status.NOT_APPLICABLE, reason)


def check(a: IntPoly, b: IntPoly, strict_galois: bool = False) -> PermissibilityReport:
    """Evaluate the seven permissibility conditions for (a, b).

    With strict_galois, condition 7 is replaced by the stronger search
    condition: every relevant type II+ root has degree <= 2 and sqrt(g(alpha))
    generates a biquadratic extension (degree > 2 then fails instead of being
    reported unsupported).
    """
    if a.is_zero or b.is_zero:
        raise ValueError("a and b must be nonzero")
    report = PermissibilityReport(a=a, b=b, conditions={})
    cond = report.conditions
    if a.lead < 0:
        a, b = -a, -b
        report.notes.append("negated a and b to make a monic")

    # (1) common even shift
    ra, rb = shifted_reciprocal_shift(a), shifted_reciprocal_shift(b)
    if ra is None or rb is None or ra.sign != 1 or rb.sign != 1:
        cond[1] = Verdict(Status.FAIL, f"reciprocity a: {ra}, b: {rb}")
    elif ra.shift != rb.shift or ra.shift % 2 or ra.shift < 2:
        cond[1] = Verdict(Status.FAIL, f"shifts differ or are not 2l with l >= 1: {ra.shift}, {rb.shift}")
    else:
        report.ell = ra.shift // 2
        cond[1] = Verdict(Status.PASS, f"l = {report.ell}")
    if cond[1].status is Status.FAIL:
        for k in range(2, 8):
            cond[k] = _na("condition 1 failed")
        return report

    # (2) a is cyclotomic times a power of x
    cyc = detect_cyclotomic_product(a)
    if cyc is None:
        cond[2] = Verdict(Status.FAIL, "a is not x^k times cyclotomic polynomials")
    else:
        cond[2] = Verdict(Status.PASS, f"a = x^{cyc.x_power} * Phi{list(cyc.factors)}")

    # (3) leading coefficient of b
    lb = b.lead
    if b.degree > a.degree:
        ok3 = lb == 1
    elif b.degree == a.degree:
        ok3 = lb in (1, 2)
    else:
        ok3 = True
    cond[3] = Verdict(Status.PASS if ok3 else Status.FAIL,
                      f"deg a = {a.degree}, deg b = {b.degree}, lead b = {lb}")

    delta = discriminant(a, b)
    if delta.is_zero:
        cond[4] = Verdict(Status.FAIL, "discriminant vanishes identically")
        for k in range(5, 8):
            cond[k] = _na("discriminant is zero")
        return report
    split = gh_split(delta)
    report.split = split
    g, h = split.g, split.h

    # (4) coprimality
    gh = poly_gcd(g, h)
    ab = poly_gcd(a, b)
    ok4 = gh.degree == 0 and ab.degree == 0
    cond[4] = Verdict(Status.PASS if ok4 else Status.FAIL,
                      f"gcd(g, h) = {gh}, gcd(a, b) = {ab}")

    # (5)
    cond[5] = Verdict(Status.PASS if g.degree <= 4 else Status.FAIL, f"deg g = {g.degree}")

    toric = toric_roots_of_h(split)
    report.toric = toric

    # (6)
    if g.degree >= 3:
        vanish = [s for s in (1, -1) if h(s) == 0]
        high = [r for r in toric if r.mult_in_h > 1]
        ok6 = bool(vanish) and not high
        cond[6] = Verdict(
            Status.PASS if ok6 else Status.FAIL,
            f"h vanishes at {vanish or 'neither of +-1'}; toric orders of h: "
            f"{[r.mult_in_h for r in toric]}",
        )
    else:
        cond[6] = _na(f"deg g = {g.degree} < 3")

    # (7)
    conductors: set[int] = set()
    status7, notes7 = Status.PASS, []
    for r in toric:
        if r.kind is not RootType.II_PLUS or r.mult_in_h % 2 == 0:
            continue
        label = f"u={r.u_exact}" if r.u_exact is not None else f"u in {tuple(map(str, r.u_interval))}"
        try:
            fs = _conductors_at(r, g)
        except Unsupported as exc:
            status7 = Status.FAIL if strict_galois else Status.UNSUPPORTED
            notes7.append(f"{label}: {exc}")
            continue
        except MultiquadraticFailure as exc:
            status7 = Status.FAIL
            notes7.append(f"{label}: {exc}")
            continue
        notes7.append(f"{label}: F = {sorted(fs)}")
        conductors |= fs
    cond[7] = Verdict(status7, "; ".join(notes7) or "no odd-order type II+ toric roots of h")
    report.conductors = tuple(sorted(conductors))
    return report


def _conductors_at(r: ToricRootRecord, g: IntPoly) -> frozenset[int]:
    u0 = r.u_exact
    if u0 is not None:
        # g(alpha) == 0 only when gcd(g, h) != 1; then K_alpha = Q(alpha)
        if abs(u0) == 2:
            if g(int(u0) // 2) == 0:
                return frozenset()
        elif r.minimal_poly is not None and _vanishes_at_quadratic(g, r.minimal_poly):
            return conductors_of_group([_alpha_coordinates(u0)[1]])
    return conductor_set(r, g)


def _vanishes_at_quadratic(g: IntPoly, mp: IntPoly) -> bool:
    return mp.divides(g)


def check_brv_form(p: IntPoly, q: IntPoly, strict_galois: bool = False) -> PermissibilityReport:
    """Check P = pq(y^2+1) + (p^2+q^2)y, whose measure is twice m(p*y + q).

    m(p*y + q) = m(p*y - q), so q is negated when that makes pq monic-positive.
    """
    flipped = (p * q).lead < 0
    if flipped:
        q = -q
    report = check(p * q, p * p + q * q, strict_galois=strict_galois)
    if flipped:
        report.notes.append("replaced q by -q (y -> -y leaves the measure unchanged)")
    g = poly_gcd(p, q)
    if g.degree > 0:
        report.notes.append(f"gcd(p, q) = {g} is not 1")
    report.notes.append("m(P) = 2*m(p*y + q), P = (p*y + q)(q*y + p)")
    return report
