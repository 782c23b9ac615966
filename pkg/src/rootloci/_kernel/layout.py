"""Packed-integer monomial layout shared by both kernel implementations.

A monomial over nvars variables is packed into a single big-endian integer
with one fixed-width field per variable (variable 0 most significant).
Field width is 1 or 2 bytes; exponents are capped at 2^(8*width-1) - 1 so
the top bit of every field is free to act as a guard bit:

    divides(a, b)   <=>  ((b | H) - a) & H == H        (no field underflow)
    mul(a, b)        =   a + b, overflow iff (a+b) & H != 0
    lcm(a, b)        =   fieldwise max via the guard-bit trick

where H has exactly the top bit of every field set.  Separately from the
exponent image, each monomial has a comparison KEY, another big integer
whose natural integer order realizes the monomial order: per block either
(block degree, then cap-e over the block's variables reversed) for grevlex
or the raw exponents for lex.  Keys add nothing to correctness, only
O(1) comparisons.
"""

from __future__ import annotations

from ..errors import DomainError, ExponentOverflow


class Layout:
    __slots__ = (
        "nvars",
        "width",
        "blocks",
        "exp_bytes",
        "cap",
        "guard_mask",
        "full_mask",
        "field_mask",
        "guard_shift",
        "deg_bytes",
        "key_bytes",
    )

    def __init__(self, nvars, blocks, width=1):
        if width not in (1, 2):
            raise DomainError("field width must be 1 or 2 bytes")
        seen = []
        for kind, idxs in blocks:
            if kind not in ("grevlex", "lex"):
                raise DomainError("unknown block kind %r" % (kind,))
            seen.extend(idxs)
        if sorted(seen) != list(range(nvars)):
            raise DomainError("blocks must cover each variable index exactly once")
        self.nvars = nvars
        self.width = width
        self.blocks = tuple((kind, tuple(idxs)) for kind, idxs in blocks)
        self.exp_bytes = nvars * width
        self.cap = (1 << (8 * width - 1)) - 1
        field_top = 1 << (8 * width - 1)
        guard = 0
        for i in range(nvars):
            guard |= field_top << (8 * width * (nvars - 1 - i))
        self.guard_mask = guard
        self.full_mask = (1 << (8 * self.exp_bytes)) - 1
        self.field_mask = (1 << (8 * width)) - 1
        self.guard_shift = 8 * width - 1
        self.deg_bytes = width + 2
        kb = 0
        for kind, idxs in self.blocks:
            kb += (self.deg_bytes if kind == "grevlex" else 0) + width * len(idxs)
        self.key_bytes = kb

    # -- exponent packing --------------------------------------------------

    def pack(self, exps):
        if len(exps) != self.nvars:
            raise DomainError("expected %d exponents" % (self.nvars,))
        out = bytearray()
        for e in exps:
            if not 0 <= e <= self.cap:
                raise ExponentOverflow(
                    "exponent %d exceeds the packed-field cap %d" % (e, self.cap)
                )
            out += e.to_bytes(self.width, "big")
        return int.from_bytes(bytes(out), "big")

    def unpack(self, packed):
        raw = packed.to_bytes(self.exp_bytes, "big")
        w = self.width
        return tuple(
            int.from_bytes(raw[i * w : (i + 1) * w], "big") for i in range(self.nvars)
        )

    def degree(self, packed):
        return sum(self.unpack(packed))

    # -- order key ---------------------------------------------------------

    def key(self, packed):
        exps = self.unpack(packed)
        out = bytearray()
        w = self.width
        for kind, idxs in self.blocks:
            if kind == "grevlex":
                deg = sum(exps[i] for i in idxs)
                out += deg.to_bytes(self.deg_bytes, "big")
                for i in reversed(idxs):
                    out += (self.cap - exps[i]).to_bytes(w, "big")
            else:
                for i in idxs:
                    out += exps[i].to_bytes(w, "big")
        return int.from_bytes(bytes(out), "big")

    # -- packed arithmetic (reference implementations) ----------------------

    def divides(self, a, b):
        """Does monomial a divide monomial b (fieldwise a <= b)?"""
        H = self.guard_mask
        return ((b | H) - a) & H == H

    def mul(self, a, b):
        c = a + b
        if c & self.guard_mask:
            raise ExponentOverflow(
                "monomial exponent overflow (field cap %d)" % (self.cap,)
            )
        return c

    def div(self, b, a):
        """b / a for a dividing b."""
        return b - a

    def lcm(self, a, b):
        H = self.guard_mask
        ge = ((a | H) - b) & H  # guard bit set where a >= b
        mask = (ge >> self.guard_shift) * self.field_mask
        return (a & mask) | (b & (self.full_mask ^ mask))
