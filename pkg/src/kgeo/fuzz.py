"""Random valid relation data.

Functions congruent to 1 come from ideal Prouhet-Tarry-Escott pairs: if the
sets X and Y (|X| = |Y| = n) have equal power sums of degrees 1..n-1, then
F(x) = prod(x - X)/prod(x - Y) satisfies F - 1 = O(x^-n) at infinity.
Composing with h(t) = c t + e (or c t + d/(t - p) + e, which has simple poles
at infinity and p) gives f = F(h) in G(P^1, n[inf]) (resp. G(n[inf] + n[p])),
with linear (resp. quadratic) factors known in advance.
"""

import random

from .algebra.fields import make_field
from .algebra.upoly import UPoly
from .line import INFINITY, Divisor, FunctionField, Hint, point_at
from .relations import MAX, SUM, RelationDatum
from .sections import Section

PTE = {
    1: ([0], [1]),
    2: ([0, 3], [1, 2]),
    3: ([1, 5, 6], [2, 3, 7]),
    4: ([0, 4, 7, 11], [1, 2, 9, 10]),
    5: ([1, 5, 9, 17, 18], [2, 3, 11, 15, 19]),
    6: ([0, 5, 6, 16, 17, 22], [1, 2, 10, 12, 20, 21]),
}
MAX_N = max(PTE)


def pte_is_ideal(xs, ys):
    n = len(xs)
    return len(ys) == n and all(sum(x ** k for x in xs) == sum(y ** k for y in ys) for k in range(1, n))


class Generator:
    """Deterministic source of random valid data over Q(a) (or Q with variables=())."""

    def __init__(self, seed=0, variables=("a",), zeta_order=1):
        self.rng = random.Random(seed)
        self.K = make_field(zeta_order, variables)
        self.F = FunctionField(self.K)
        self.t = self.F.t

    # small random scalars ------------------------------------------------
    def scalar(self, nonzero=False):
        """Small element of Z + Z a (or of Z[1/6] over Q); monic normalization
        supplies the rational functions in a."""
        K, rng = self.K, self.rng
        while True:
            x = K.convert(rng.randint(-3, 3))
            if K.variables and rng.random() < 0.5:
                x = x + K.gen(K.variables[0]) * rng.randint(-2, 2)
            elif not K.variables and rng.random() < 0.2:
                x = x * K.inv(K.convert(rng.choice([2, 3])))
            if not nonzero or not K.is_zero(x):
                return x

    # sections --------------------------------------------------------------
    def ga_section(self, p, budget_inf, budget_p):
        """Laurent polynomial in t and 1/(t - p) with pole orders inside the budgets."""
        rng, F, t = self.rng, self.F, self.t
        e_inf = rng.randint(0, max(0, budget_inf - 1)) if budget_inf >= 2 else 0
        e_p = rng.randint(0, max(0, budget_p - 1)) if (p is not None and budget_p >= 2) else 0
        g = F.convert(self.scalar())
        for k in range(1, e_inf + 1):
            g = g + t ** k * self.scalar(nonzero=(k == e_inf))
        if e_p:
            inv = F.one / (t - p)
            for k in range(1, e_p + 1):
                g = g + inv ** k * self.scalar(nonzero=(k == e_p))
        mod = {}
        if e_inf:
            mod[INFINITY] = e_inf + 1
        if e_p:
            mod[point_at(self.K, p)] = e_p + 1
        return Section("Ga", g, Divisor(mod))

    def gm_section(self, p):
        rng, F, t = self.rng, self.F, self.t
        c = self.scalar(nonzero=True)
        if p is None or rng.random() < 0.25:
            if rng.random() < 0.5:
                return Section("Const", F.convert(c), Divisor(), "Gm")
            # a constant Gm section may still declare a modulus
            return Section("Gm", F.convert(c), Divisor({INFINITY: 1}) if rng.random() < 0.5 else Divisor())
        e = rng.choice([-2, -1, 1, 2])
        g = (t - p) ** e * c
        return Section("Gm", g, Divisor({point_at(self.K, p): 1, INFINITY: 1}))

    # f ------------------------------------------------------------------------
    def congruent_function(self, n_inf, n_p, p):
        """f in G(n_inf[inf] + n_p[p]) with hints for every factor."""
        rng, F, K, t = self.rng, self.F, self.K, self.t
        n = max(n_inf, n_p, 1)
        if n > MAX_N:
            raise ValueError(f"congruence of order {n} exceeds the PTE table")
        xs, ys = PTE[n]
        if rng.random() < 0.5:
            xs, ys = ys, xs
        c = self.scalar(nonzero=True)
        e = self.scalar()
        if n_p:
            d = self.scalar(nonzero=True)
            h = t * c + F.convert(e) + F.convert(d) / (t - p)
        else:
            h = t * c + F.convert(e)
        num, den = F.one, F.one
        hints = []
        for x in xs:
            q = h - x
            num = num * q
            hints.append(Hint(q.num.monic()))
        for y in ys:
            q = h - y
            den = den * q
            hints.append(Hint(q.num.monic()))
        return num / den, hints

    def datum(self, signature, variant=SUM):
        """A random datum with the given signature (tuple of "Ga"/"Gm"), valid for ``variant``."""
        rng, K = self.rng, self.K
        for _attempt in range(50):
            p = self.scalar() if rng.random() < 0.7 else None
            budget_inf = rng.randint(2, 4)
            budget_p = rng.randint(2, 3) if p is not None else 0
            sections = []
            for kind in signature:
                if kind == "Ga":
                    sections.append(self.ga_section(p, budget_inf, budget_p))
                else:
                    sections.append(self.gm_section(p))
            mods = [s.modulus for s in sections]
            if variant == SUM:
                m = Divisor()
                for x in mods:
                    m = m + x
            else:
                m = Divisor()
                for x in mods:
                    m = m.pointwise_max(x)
            # the congruence must hold somewhere for f to be nontrivial
            n_inf = m.mult(INFINITY)
            n_p = m.mult(point_at(K, p)) if p is not None else 0
            if n_inf > MAX_N or n_p > MAX_N:
                continue
            if rng.random() < 0.3 and n_inf < MAX_N:
                n_inf += 1
                m = m + Divisor({INFINITY: 1})
            f, hints = self.congruent_function(n_inf, n_p, p)
            return RelationDatum(variant, m, f, sections, hints, name="random")
        raise RuntimeError("could not generate a datum")


SIGNATURES = {
    "ga": ("Ga",),
    "gm": ("Gm",),
    "ga,ga": ("Ga", "Ga"),
    "ga,gm": ("Ga", "Gm"),
    "gm,gm": ("Gm", "Gm"),
    "ga,gm,gm": ("Ga", "Gm", "Gm"),
}


def parse_signature(text):
    key = text.replace(" ", "").lower()
    if key in SIGNATURES:
        return SIGNATURES[key]
    parts = key.split(",")
    if parts and all(x in ("ga", "gm") for x in parts):
        return tuple("Ga" if x == "ga" else "Gm" for x in parts)
    raise ValueError(f"unknown signature {text!r}")


def random_data(signature, count, seed, variant=SUM, variables=("a",)):
    gen = Generator(seed, variables)
    return [gen.datum(signature, variant) for _ in range(count)]
