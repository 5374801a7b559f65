from functools import lru_cache

from src.models.errors import InvalidIndex
from src.models.poly import Poly


@lru_cache(maxsize=None)
def chebyshev_p(s: int) -> Poly:
    """
    Type A sequence: P_0 = 0, P_1 = 1, P_{s+1} = d*P_s - P_{s-1}
    """
    if s < 0:
        raise InvalidIndex(f"P_{s} is undefined for negative index")
    if s == 0:
        return Poly.zero()
    previous, current = Poly.zero(), Poly.one()
    for _ in range(1, s):
        previous, current = current, current.scale_by_monomial(1) - previous
    return current


@lru_cache(maxsize=None)
def chebyshev_q(t: int) -> Poly:
    """
    Type D sequence seeded by Q_2 = d^2 and Q_3 = d^3 - 2d,
    Q_{t+1} = d*Q_t - Q_{t-1} from t = 3 on.

    Q_1 is taken to be 1 (not the back-extension 2d of the recurrence),
    so that the closed determinant formula gives det G(n,1) = Q_n
    """
    if t < 1:
        raise InvalidIndex(f"Q_{t} is undefined, index must be at least 1")
    if t == 1:
        return Poly.one()
    if t == 2:
        return Poly.monomial(2)
    previous, current = Poly.monomial(2), Poly(coeffs=(0, -2, 0, 1))
    for _ in range(3, t):
        previous, current = current, current.scale_by_monomial(1) - previous
    return current
