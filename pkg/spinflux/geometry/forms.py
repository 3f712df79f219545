"""Normal forms in adapted frames.

Coefficients are polynomials in the global parameter ring, so torsion
forms carry their free parameters (a, b, c, alpha, lam) directly.
"""

from fractions import Fraction

from spinflux.algebra import symring
from spinflux.algebra.exterior import Form, hodge, parse_form, wedge
from spinflux.algebra.symring import Poly

a = symring.gen("a")
b = symring.gen("b")
c = symring.gen("c")
alpha = symring.gen("alpha")
lam = symring.gen("lam")


def _one(n: int, *blades: str) -> Form:
    return parse_form(n, {blade: 1 for blade in blades})


def _signed(n: int, spec: dict[str, int]) -> Form:
    return parse_form(n, spec)


# Contact forms.
def eta(n: int) -> Form:
    return Form.blade(n, (n,))


def contact_phi(n: int) -> Form:
    """Phi = e12 + e34 + ... up to e_{n-2, n-1}."""
    return sum(
        (Form.blade(n, (i, i + 1)) for i in range(1, n - 1, 2)),
        Form.zero(n),
    )


def sasakian_torsion(n: int, coeff: Poly = alpha) -> Form:
    """alpha * Phi ^ eta."""
    return wedge(contact_phi(n), eta(n)) * coeff


# Six-dimensional almost Hermitian forms.
KAEHLER = _one(6, "12", "34", "56")
OMEGA1 = _one(6, "56")
OMEGA2 = _one(6, "12", "34")
STAR_KAEHLER = hodge(KAEHLER)
PSI_PLUS = _signed(6, {"135": 1, "146": -1, "236": -1, "245": -1})
SU3_TORSION_SHAPE = _signed(6, {"246": -1, "136": 1, "145": 1, "235": 1})
SO3_T12_SHAPE = _signed(6, {"135": 3, "146": 1, "236": 1, "245": 1})

# J e1 = e2, J e3 = e4, J e5 = e6 and J e2 = -e1, J e4 = -e3, J e6 = -e5.
COMPLEX_STRUCTURE = {
    1: (2, 1),
    2: (1, -1),
    3: (4, 1),
    4: (3, -1),
    5: (6, 1),
    6: (5, -1),
}


def complex_structure_derivation(x: Form) -> Form:
    """Extend J to forms as a derivation."""
    total = Form.zero(x.n)
    for mask, coeff in x.terms.items():
        indices = [i + 1 for i in range(x.n) if mask >> i & 1]
        for pos, i in enumerate(indices):
            target, sign = COMPLEX_STRUCTURE[i]
            replaced = [*indices[:pos], target, *indices[pos + 1 :]]
            total = total + Form.blade(x.n, replaced, coeff * sign)
    return total


# Seven-dimensional G2 forms.
G2_FORM = _signed(
    7,
    {"127": 1, "135": 1, "146": -1, "236": -1, "245": -1, "347": 1, "567": 1},
)
G2_DUAL = hodge(G2_FORM)
D1 = _one(7, "127", "347", "567") - G2_FORM
PSI_PLUS_7 = _signed(7, {"135": 1, "146": -1, "236": -1, "245": -1})
D2 = (
    -PSI_PLUS_7
    - _signed(7, {"127": 1, "347": 1, "567": -2}) * Fraction(1, 2)
)
D3 = _one(7, "567") - G2_FORM
F1 = _signed(7, {"2467": -1, "2357": 1, "1457": 1, "1367": 1})
F2 = _one(7, "1256", "3456")
F3 = _one(7, "1234")


def g2_type_ii_su3_torsion() -> Form:
    return (
        _signed(
            7, {"123": -2, "136": 1, "145": -1, "235": 1, "246": 1, "356": 2}
        )
        * a
        + _signed(
            7, {"124": -2, "135": -1, "146": -1, "236": 1, "245": -1, "456": 2}
        )
        * b
        + PSI_PLUS_7 * c
    )
