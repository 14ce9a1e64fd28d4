"""Worked relation data on P^1 as JSON payloads, with the symbol sums they are
expected to expand to."""

import copy


def _div(*pairs):
    return [{"point": p, "mult": m} for p, m in pairs]


STEINBERG = {
    "name": "steinberg-m12",
    "field": {"zeta_order": 12, "variables": ["a"]},
    "variant": "sum",
    "modulus": _div(("0", 2), ("1", 1), ("inf", 2)),
    "f": "(t^6 - (a^6 + 1)*t^4 + (a^6 + 1)*t^2 - a^6)/(t^6 - a^6)",
    "factor_hints": [
        "t^2 - a^6",
        "t^4 - t^2 + 1",
        "t - a",
        "t + a",
        "t - zeta^2*a",
        "t - zeta^4*a",
        "t - zeta^8*a",
        "t - zeta^10*a",
    ],
    "sections": [
        {"kind": "Gm", "expr": "t", "modulus": _div(("0", 1), ("inf", 1))},
        {"kind": "Gm", "expr": "1 - t", "modulus": _div(("0", 1), ("1", 1), ("inf", 1))},
    ],
}

# zeros and poles c of f; each contributes {c, 1 - c}
STEINBERG_ZEROS = ["a^3", "-a^3", "zeta", "-zeta", "zeta^5", "-zeta^5"]
STEINBERG_POLES = ["a", "zeta^4*a", "zeta^8*a", "-a", "-zeta^4*a", "-zeta^8*a"]

OMEGA_R1 = {
    "name": "omega-r1",
    "field": {"zeta_order": 1, "variables": ["a"]},
    "variant": "sum",
    "modulus": _div(("0", 1), ("inf", 3)),
    "f": "(t - a)*(t - (1 - a))*(t + 1)*(t^2 + a^2 - a + 1)/(t^5 - a*(1 - a)*(a - a^2 - 1))",
    "factor_hints": [
        "t - a",
        "t - 1 + a",
        "t + 1",
        "t^2 + a^2 - a + 1",
        {"poly": "t^5 - a*(1 - a)*(a - a^2 - 1)", "certificate": "eisenstein:a"},
    ],
    "sections": [
        {"kind": "Ga", "expr": "t", "modulus": _div(("inf", 2))},
        {"kind": "Gm", "expr": "t", "modulus": _div(("0", 1), ("inf", 1))},
    ],
}

ALPHA_POLY = "u^2 + a^2 - a + 1"
BETA_POLY = "u^5 - a*(1 - a)*(a - a^2 - 1)"

# {a,a} + {1-a,1-a} + {-1,-1} + Tr{alpha,alpha} - Tr{beta,beta}
OMEGA_R1_EXPANSION = [
    (1, None, ["a", "a"]),
    (1, None, ["1 - a", "1 - a"]),
    (1, None, ["-1", "-1"]),
    (1, ALPHA_POLY, ["u", "u"]),
    (-1, BETA_POLY, ["u", "u"]),
]

LEIBNIZ = {
    "name": "leibniz",
    "field": {"zeta_order": 1, "variables": ["a", "b"]},
    "variant": "sum",
    "modulus": _div(("inf", 4)),
    "f": "(t^2 - a^2/4)*(t^2 - b^2)*(t^2 - (1 + a*b/2)^2)"
         "/((t^2 - 1)*(t^2 - a^2*b^2/4)*(t^2 - (a/2 + b)^2))",
    "factor_hints": [
        "t - a/2", "t + a/2", "t - b", "t + b", "t - 1 - a*b/2", "t + 1 + a*b/2",
        "t - 1", "t + 1", "t - a*b/2", "t + a*b/2", "t - a/2 - b", "t + a/2 + b",
    ],
    "sections": [
        {"kind": "Ga", "expr": "t", "modulus": _div(("inf", 2))},
        {"kind": "Ga", "expr": "t", "modulus": _div(("inf", 2))},
    ],
}

# {a,a/2} + {2b,b} + {a+ab,1+ab/2} - {2,1} - {ab,a/2} - {a+2b,a/2+b}
LEIBNIZ_EXPANSION = [
    (1, ["a", "a/2"]),
    (1, ["2*b", "b"]),
    (1, ["a + a*b", "1 + a*b/2"]),
    (-1, ["2", "1"]),
    (-1, ["a*b", "a/2"]),
    (-1, ["a + 2*b", "a/2 + b"]),
]

# The printed list above has two slips: the point 1+ab/2 contributes
# 2{c,c} = {2+ab, 1+ab/2} and the point ab/2 contributes {ab, ab/2}.
LEIBNIZ_EXPANSION_CORRECTED = [
    (1, ["a", "a/2"]),
    (1, ["2*b", "b"]),
    (1, ["2 + a*b", "1 + a*b/2"]),
    (-1, ["2", "1"]),
    (-1, ["a*b", "a*b/2"]),
    (-1, ["a + 2*b", "a/2 + b"]),
]

# {1,ab} + {ab,1} - {a,b} - {b,a}
LEIBNIZ_RELATION = [
    (1, ["1", "a*b"]),
    (1, ["a*b", "1"]),
    (-1, ["a", "b"]),
    (-1, ["b", "a"]),
]

MAX_ONLY = {
    "name": "max-only",
    "field": {"zeta_order": 1, "variables": ["a", "b"]},
    "variant": "max",
    "modulus": _div(("inf", 2)),
    "f": "(t^2 - 1)/t^2",
    "factor_hints": ["t - 1", "t + 1"],
    "sections": [
        {"kind": "Ga", "expr": "a*t/2", "modulus": _div(("inf", 2))},
        {"kind": "Ga", "expr": "b*t", "modulus": _div(("inf", 2))},
    ],
}

# {a/2,b} + {-a/2,-b} - 2{0,0}
MAX_ONLY_EXPANSION = [
    (1, ["a/2", "b"]),
    (1, ["-a/2", "-b"]),
    (-2, ["0", "0"]),
]


def payload(name):
    table = {
        "steinberg": STEINBERG,
        "omega-r1": OMEGA_R1,
        "leibniz": LEIBNIZ,
        "max-only": MAX_ONLY,
    }
    return copy.deepcopy(table[name])
