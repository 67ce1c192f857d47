"""Central finite-difference stencils shared by the residual and curvature code.

Every helper accepts a callable ``f`` returning a scalar or ndarray,
broadcasts over array-valued ``x`` and supports accuracy orders 2, 4 and 6.
"""

from fractions import Fraction as _F

from .exceptions import ParameterError

# offset -> weight for the positive offsets; first derivatives are odd, second even
_FIRST = {
    2: {1: _F(1, 2)},
    4: {1: _F(2, 3), 2: _F(-1, 12)},
    6: {1: _F(3, 4), 2: _F(-3, 20), 3: _F(1, 60)},
}
_SECOND = {
    2: {0: _F(-2), 1: _F(1)},
    4: {0: _F(-5, 2), 1: _F(4, 3), 2: _F(-1, 12)},
    6: {0: _F(-49, 18), 1: _F(3, 2), 2: _F(-3, 20), 3: _F(1, 90)},
}


def _table(tables, order):
    try:
        return tables[order]
    except KeyError:
        raise ParameterError(f"stencil order must be one of {sorted(tables)}, got {order}") from None


def first_weights(order):
    """[(offset, weight), ...] of the central first-derivative stencil."""
    half = _table(_FIRST, order)
    return [(k, float(w)) for k, w in half.items()] + [(-k, -float(w)) for k, w in half.items()]


def d1(f, x, h, order=4):
    """Central first derivative of the given accuracy order."""
    total = 0.0
    # symmetric pairs first, so constant f differentiates to exactly 0
    for k, w in _table(_FIRST, order).items():
        total = total + float(w) * (f(x + k * h) - f(x - k * h))
    return total / h


def d2(f, x, h, order=4):
    """Central second derivative of the given accuracy order."""
    half = _table(_SECOND, order)
    center = f(x)
    total = 0.0
    for k, w in half.items():
        if k:
            total = total + float(w) * ((f(x + k * h) - center) + (f(x - k * h) - center))
    return total / (h * h)


def d11(f, x, y, h, order=4):
    """Mixed partial d^2 f / dx dy from the tensor product of first-derivative stencils."""
    half = _table(_FIRST, order)
    total = 0.0
    for i, wi in half.items():
        for j, wj in half.items():
            quad = (f(x + i * h, y + j * h) - f(x + i * h, y - j * h)) - (f(x - i * h, y + j * h) - f(x - i * h, y - j * h))
            total = total + float(wi * wj) * quad
    return total / (h * h)
