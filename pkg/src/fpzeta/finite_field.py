"""Table-driven arithmetic in F_{p^k}.

An element is encoded as the integer sum(c_i * p^i) where c_0 + c_1 t + ... is
its residue modulo a fixed irreducible polynomial.  The modulus is the first
monic irreducible of degree k when the lower coefficients (c_0, ..., c_{k-1})
are read as a base-p integer with c_0 least significant, so counts are
reproducible without external tables.  Multiplication goes through
discrete-log tables, addition through digit vectors; both are numpy-vectorized.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ResourceError
from .numerics import require_prime

# F_p[t] helpers on coefficient lists, lowest degree first.


def _fp_trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    inv = pow(f[-1], -1, p)
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _fp_trim(a[:df] or [0])


def _fp_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _fp_mod(out, f, p)


def _fp_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    out = [1]
    base = _fp_mod(a, f, p)
    while e:
        if e & 1:
            out = _fp_mulmod(out, base, f, p)
        base = _fp_mulmod(base, base, f, p)
        e >>= 1
    return out


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_trim([x % p for x in a]), _fp_trim([x % p for x in b])
    while b != [0]:
        a, b = b, _fp_mod(a, b, p) if len(b) > 1 else [0]
    return a


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    k = len(f) - 1
    if k == 1:
        return True
    x = [0, 1]
    for r in _prime_factors(k):
        h = _fp_powmod(x, p ** (k // r), f, p)
        diff = _fp_trim([(a - b) % p for a, b in _zip0(h, x)])
        if len(_fp_gcd(f, diff, p)) > 1:
            return False
    h = _fp_powmod(x, p**k, f, p)
    return _fp_trim([(a - b) % p for a, b in _zip0(h, x)]) == [0]


def _zip0(a, b):
    n = max(len(a), len(b))
    return [((a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)) for i in range(n)]


def _pad(a: list[int], k: int) -> list[int]:
    return list(a) + [0] * (k - len(a))


def first_irreducible(p: int, k: int) -> list[int]:
    for code in range(p**k):
        lower = [(code // p**i) % p for i in range(k)]
        f = lower + [1]
        if k > 1 and f[0] == 0:
            continue
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# Largest field for which log tables are built.
FIELD_TABLE_LIMIT = 1 << 21


class GF:
    """The field F_{p^k} with vectorized table arithmetic."""

    def __init__(self, p: int, k: int):
        require_prime(p)
        q = p**k
        if q > FIELD_TABLE_LIMIT:
            raise ResourceError(f"F_{p}^{k} has {q} elements, above the table limit {FIELD_TABLE_LIMIT}")
        self.p, self.k, self.q = p, k, q
        self.modulus = first_irreducible(p, k)
        self.pw = np.array([p**i for i in range(k)], dtype=np.int64)
        codes = np.arange(q, dtype=np.int64)
        self.digits = np.stack([(codes // p**i) % p for i in range(k)], axis=1)
        self._build_logs()

    def _encode(self, poly: list[int]) -> int:
        return sum(c * self.p**i for i, c in enumerate(poly))

    def _decode(self, code: int) -> list[int]:
        return [(code // self.p**i) % self.p for i in range(self.k)]

    def _build_logs(self) -> None:
        p, q, f = self.p, self.q, self.modulus
        order = q - 1
        factors = _prime_factors(order)
        g = None
        for cand in range(2 if q > 2 else 1, q):
            gp = self._decode(cand)
            if all(_fp_powmod(gp, order // r, f, p) != [1] for r in factors):
                g = gp
                break
        if g is None:  # q == 2
            g = [1]
        self.generator = self._encode(g)
        # exp table by doubling: exp[L:2L] = exp[0:L] * g^L, a linear map on digit vectors
        exp = np.array([1], dtype=np.int64)
        while len(exp) < order:
            h = _fp_powmod(g, len(exp), f, p)
            mat = np.array(
                [_pad(_fp_mulmod(h, [0] * j + [1], f, p), self.k) for j in range(self.k)], dtype=np.int64
            )
            nxt = ((self.digits[exp] @ mat) % p) @ self.pw
            exp = np.concatenate([exp, nxt])
        exp = exp[:order]
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(order, dtype=np.int64)
        self.exp, self.log = exp, log

    # vectorized operations on arrays of codes

    def add(self, a, b):
        return ((self.digits[a] + self.digits[b]) % self.p) @ self.pw

    def neg(self, a):
        return ((-self.digits[a]) % self.p) @ self.pw

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la, lb = self.log[a], self.log[b]
        out = self.exp[(la + lb) % (self.q - 1)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def power(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        la = self.log[a]
        if e == 0:
            return np.ones_like(a)
        out = self.exp[(la * e) % (self.q - 1)]
        return np.where(la < 0, 0, out)

    def quadratic_character(self, a):
        la = self.log[np.asarray(a, dtype=np.int64)]
        return np.where(la < 0, 0, np.where(la % 2 == 0, 1, -1))

    def trace(self, a):
        """Absolute trace to F_p, as integers in [0, p)."""
        a = np.asarray(a, dtype=np.int64)
        acc = np.zeros_like(a)
        cur = a
        for _ in range(self.k):
            acc = self.add(acc, cur)
            cur = self.power(cur, self.p)
        return self.digits[acc][..., 0]

    def from_int(self, c: int) -> int:
        """Embed an integer (reduced mod p) into the prime field."""
        return c % self.p

    def elements(self):
        return np.arange(self.q, dtype=np.int64)


@lru_cache(maxsize=64)
def get_field(p: int, k: int) -> GF:
    return GF(p, k)
