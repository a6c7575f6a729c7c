# emacs: -*- mode: python; py-indent-offset: 4; indent-tabs-mode: nil -*-
# vi: set ft=python sts=4 ts=4 sw=4 et:
"""Arithmetic in GF(2^m) with a pinned modulus, via log/exp tables."""

from __future__ import annotations


def _carryless_mul(x, y, bits, modulus):
    out = 0
    while y:
        if y & 1:
            out ^= x
        y >>= 1
        x <<= 1
        if x >> bits:
            x ^= modulus
    return out


class GaloisField:
    """The field GF(2^bits) defined by an irreducible ``modulus``.

    Elements are plain ints in ``[0, 2**bits)``; addition is XOR.
    """

    def __init__(self, bits: int, modulus: int):
        self.bits = bits
        self.modulus = modulus
        self.order = 1 << bits
        exp, log, generator = self._build_tables()
        self.generator = generator
        self._exp = exp
        self._log = log

    def __repr__(self):
        return f"GaloisField(2^{self.bits}, modulus={self.modulus:#x})"

    def _build_tables(self):
        size = self.order - 1
        for g in range(2, self.order):
            exp = [0] * (2 * size)
            log = [0] * self.order
            x = 1
            for i in range(size):
                if i and x == 1:
                    break
                exp[i] = x
                log[x] = i
                x = _carryless_mul(x, g, self.bits, self.modulus)
            else:
                if x == 1:
                    for i in range(size, 2 * size):
                        exp[i] = exp[i - size]
                    return exp, log, g
        raise ValueError(f"Modulus {self.modulus:#x} does not define a field.")

    def elements(self) -> range:
        return range(self.order)

    @staticmethod
    def add(x: int, y: int) -> int:
        return x ^ y

    sub = add

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[self._log[x] + self._log[y]]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse in a field.")
        return self._exp[(self.order - 1) - self._log[x]]

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if e == 0:
            return 1
        if x == 0:
            return 0
        return self._exp[(self._log[x] * e) % (self.order - 1)]

    def eval_poly(self, coeffs, x: int) -> int:
        """Evaluate ``coeffs[0] + coeffs[1] x + ...`` by Horner's rule."""
        out = 0
        for c in reversed(list(coeffs)):
            out = self.mul(out, x) ^ c
        return out

    def random_element(self, rng, nonzero=False) -> int:
        low = 1 if nonzero else 0
        return int(rng.integers(low, self.order))

    def random_poly(self, constant: int, degree: int, rng) -> list[int]:
        return [constant] + [self.random_element(rng) for _ in range(degree)]

    def interpolate(self, points, x: int = 0) -> int:
        """Lagrange interpolation through ``points`` evaluated at ``x``."""
        points = list(points)
        out = 0
        for i, (xi, yi) in enumerate(points):
            num, den = 1, 1
            for j, (xj, _) in enumerate(points):
                if i != j:
                    num = self.mul(num, x ^ xj)
                    den = self.mul(den, xi ^ xj)
            out ^= self.mul(yi, self.div(num, den))
        return out

    def interpolate_poly(self, points) -> list[int]:
        """Coefficients of the unique polynomial of degree < len(points) through ``points``."""
        points = list(points)
        coeffs = [0] * len(points)
        for i, (xi, yi) in enumerate(points):
            basis = [1]
            den = 1
            for j, (xj, _) in enumerate(points):
                if i == j:
                    continue
                basis = self.poly_mul(basis, [xj, 1])
                den = self.mul(den, xi ^ xj)
            scale = self.div(yi, den)
            for k, c in enumerate(basis):
                coeffs[k] ^= self.mul(scale, c)
        return coeffs

    def poly_mul(self, p, q) -> list[int]:
        out = [0] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(q):
                out[i + j] ^= self.mul(a, b)
        return out

    def poly_divmod(self, num, den):
        """Quotient and remainder of polynomial division (low-order first)."""
        num = list(num)
        den = list(den)
        while den and den[-1] == 0:
            den.pop()
        if not den:
            raise ZeroDivisionError("Polynomial division by zero.")
        quot = [0] * max(len(num) - len(den) + 1, 1)
        lead_inv = self.inv(den[-1])
        for k in range(len(num) - len(den), -1, -1):
            coef = self.mul(num[k + len(den) - 1], lead_inv)
            quot[k] = coef
            if coef:
                for j, d in enumerate(den):
                    num[k + j] ^= self.mul(coef, d)
        return quot, num[: len(den) - 1]

    def solve(self, matrix, rhs):
        """One solution of ``matrix @ x = rhs`` over the field, or ``None``."""
        rows = len(matrix)
        cols = len(matrix[0]) if rows else 0
        aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
        pivots = []
        r = 0
        for c in range(cols):
            pivot = next((i for i in range(r, rows) if aug[i][c]), None)
            if pivot is None:
                continue
            aug[r], aug[pivot] = aug[pivot], aug[r]
            scale = self.inv(aug[r][c])
            aug[r] = [self.mul(scale, v) for v in aug[r]]
            for i in range(rows):
                if i != r and aug[i][c]:
                    f = aug[i][c]
                    aug[i] = [v ^ self.mul(f, w) for v, w in zip(aug[i], aug[r])]
            pivots.append(c)
            r += 1
            if r == rows:
                break
        if any(not any(row[:cols]) and row[cols] for row in aug):
            return None
        x = [0] * cols
        for i, c in enumerate(pivots):
            x[c] = aug[i][cols]
        return x

    def robust_fit(self, points, degree: int, max_errors: int):
        """Berlekamp-Welch: the polynomial of degree <= ``degree`` missing at most
        ``max_errors`` of ``points``, or ``None``.
        """
        points = list(points)
        n = len(points)
        for e in range(min(max_errors, (n - degree - 1) // 2), -1, -1):
            # Unknowns: Q (degree + e + 1 coefficients), E monic of degree e.
            n_q = degree + e + 1
            matrix, rhs = [], []
            for x, y in points:
                row = [self.pow(x, k) for k in range(n_q)]
                row += [self.mul(y, self.pow(x, k)) for k in range(e)]
                matrix.append(row)
                rhs.append(self.mul(y, self.pow(x, e)))
            sol = self.solve(matrix, rhs)
            if sol is None:
                continue
            q_poly = sol[:n_q]
            e_poly = sol[n_q:] + [1]
            quot, rem = self.poly_divmod(q_poly, e_poly)
            if any(rem):
                continue
            quot = (quot + [0] * (degree + 1))[: degree + 1]
            misses = sum(self.eval_poly(quot, x) != y for x, y in points)
            if misses <= max_errors:
                return quot
        return None


GF256 = GaloisField(8, 0x11B)
"""GF(2^8) with the AES modulus ``x^8 + x^4 + x^3 + x + 1``."""

GF16 = GaloisField(4, 0x13)
"""GF(2^4) with modulus ``x^4 + x + 1``, small enough for exhaustive checks."""
