"""Fourth-order finite-difference stencils."""

DEFAULT_STEP = 1e-4

# central: offsets -2..2
_CENTRAL = {
    1: ((-2, 1 / 12), (-1, -8 / 12), (1, 8 / 12), (2, -1 / 12)),
    2: ((-2, -1 / 12), (-1, 16 / 12), (0, -30 / 12), (1, 16 / 12), (2, -1 / 12)),
}
# one-sided forward: offsets 0..4 (first derivative), 0..5 (second)
_FORWARD = {
    1: ((0, -25 / 12), (1, 48 / 12), (2, -36 / 12), (3, 16 / 12), (4, -3 / 12)),
    2: ((0, 45 / 12), (1, -154 / 12), (2, 214 / 12), (3, -156 / 12), (4, 61 / 12),
        (5, -10 / 12)),
}


def central_diff(f, x, h=DEFAULT_STEP, order=1):
    """Derivative of ``f`` at ``x`` with the 4th-order five-point central stencil."""
    if order not in _CENTRAL:
        raise ValueError("order must be 1 or 2")
    if not h > 0:
        raise ValueError("h must be positive")
    acc = sum(c * f(x + k * h) for k, c in _CENTRAL[order])
    return acc / h ** order


def forward_diff(f, x, h=DEFAULT_STEP, order=1):
    """4th-order one-sided stencil using points at and above ``x``.

    For boundaries such as t = 0 where f is not defined below the point.
    """
    if order not in _FORWARD:
        raise ValueError("order must be 1 or 2")
    if not h > 0:
        raise ValueError("h must be positive")
    acc = sum(c * f(x + k * h) for k, c in _FORWARD[order])
    return acc / h ** order


def stencil(order):
    """(offset, weight) pairs of the central stencil, for vectorised callers."""
    return _CENTRAL[order]
