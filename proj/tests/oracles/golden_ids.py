#!/usr/bin/env python3
"""Reference serializer and hasher for the golden identifier vectors.

Written independently of the C++ code: terms are built by hand in de Bruijn
form, encoded with the documented byte tags and hashed with hashlib. Keys
come from the `cryptography` package. Prints `name hex` lines; the output
is committed as tests/golden/ids.txt.
"""

import hashlib
import sys

from cryptography.hazmat.primitives.asymmetric.ed25519 import Ed25519PrivateKey
from cryptography.hazmat.primitives import serialization


def leb(n):
    out = bytearray()
    while True:
        b = n & 0x7F
        n >>= 7
        if n:
            out.append(b | 0x80)
        else:
            out.append(b)
            return bytes(out)


def sha(b):
    return hashlib.sha256(b).digest()


# types
PROP = b"\x00"


def base(i):
    return b"\x01" + leb(i)


SET = base(0)


def func(a, b):
    return b"\x02" + a + b


# terms
def db(i):
    return b"\x10" + leb(i)


def prim(i):
    return b"\x11" + leb(i)


def ap(f, *args):
    for a in args:
        f = b"\x13" + f + a
    return f


def la(ty, body):
    return b"\x14" + ty + body


def imp(a, b):
    return b"\x15" + a + b


def all_(ty, body):
    return b"\x16" + ty + body


MEM, EMPTY, ADJOIN = prim(0), prim(1), prim(2)


def mem(a, b):
    return ap(MEM, a, b)


def adjoin(a, b):
    return ap(ADJOIN, a, b)


MINIHF_PRIMS = [func(SET, func(SET, PROP)), SET, func(SET, func(SET, SET))]
MINIHF_AXIOMS = [
    # empty_ax
    all_(SET, imp(mem(db(0), EMPTY), all_(PROP, db(0)))),
    # adjoin_in
    all_(SET, all_(SET, mem(db(1), adjoin(db(1), db(0))))),
    # adjoin_sub
    all_(SET, all_(SET, all_(SET, imp(mem(db(0), db(1)), mem(db(0), adjoin(db(2), db(1))))))),
    # adjoin_elim
    all_(SET, all_(SET, all_(SET, imp(
        mem(db(0), adjoin(db(2), db(1))),
        all_(PROP, imp(
            imp(mem(db(1), db(2)), db(0)),
            imp(imp(all_(func(SET, PROP), imp(ap(db(0), db(2)), ap(db(0), db(4)))), db(0)), db(0)))))))),
    # set_ext
    all_(SET, all_(SET, imp(
        all_(SET, imp(mem(db(0), db(2)), mem(db(0), db(1)))),
        imp(all_(SET, imp(mem(db(0), db(1)), mem(db(0), db(2)))),
            all_(func(SET, PROP), imp(ap(db(0), db(2)), ap(db(0), db(1)))))))),
]


def theory_bytes(bases, prims, axioms):
    out = b"\x20" + leb(bases) + leb(len(prims)) + b"".join(prims)
    return out + leb(len(axioms)) + b"".join(axioms)


def keypair(seed):
    secret = sha(leb(seed))
    sk = Ed25519PrivateKey.from_private_bytes(secret)
    return sk.public_key().public_bytes(serialization.Encoding.Raw, serialization.PublicFormat.Raw)


def derive_addr(pk):
    return b"\x31" + sha(pk)[:20]


def prop_addr(th, pid):
    return b"\x30" + sha(th + pid)[:20]


class SeedStream:
    """sha256(seed || LEB(counter)) blocks, consumed byte by byte."""

    def __init__(self, seed):
        self.seed, self.counter, self.buf = seed, 0, b""

    def next(self):
        if not self.buf:
            self.buf = sha(self.seed + leb(self.counter))
            self.counter += 1
        b, self.buf = self.buf[0], self.buf[1:]
        return b


def random_set(s, depth, nvars):
    choices = (["var"] if nvars else []) + ["empty"] + (["adjoin"] if depth < 2 else [])
    c = choices[s.next() % len(choices)]
    if c == "var":
        return db(s.next() % nvars)
    if c == "empty":
        return EMPTY
    a = random_set(s, depth + 1, nvars)
    b = random_set(s, depth + 1, nvars)
    return adjoin(a, b)


def random_prop(s, depth, nvars):
    # The root is always an implication; no byte is consumed for it.
    if depth == 0:
        c = "imp"
    elif depth < 3:
        c = ["imp", "all"][s.next() % 2]
    elif depth < 5:
        c = ["imp", "all", "atom"][s.next() % 3]
    else:
        c = "atom"
    if c == "imp":
        a = random_prop(s, depth + 1, nvars)
        b = random_prop(s, depth + 1, nvars)
        return imp(a, b)
    if c == "all":
        return all_(SET, random_prop(s, depth + 1, nvars + 1))
    x = random_set(s, 0, nvars)
    y = random_set(s, 0, nvars)
    return mem(x, y)


def main():
    rows = []
    rows.append(("term_id_identity_set", sha(la(SET, db(0)))))
    false = all_(PROP, db(0))
    imp_refl = imp(false, false)
    rows.append(("prop_id_false_implies_false", sha(imp_refl)))
    th = sha(theory_bytes(1, MINIHF_PRIMS, MINIHF_AXIOMS))
    rows.append(("theory_id_minihf", th))
    for seed in (0, 1, 7):
        rows.append((f"pubkey_seed_{seed}", keypair(seed)))
        rows.append((f"addr_seed_{seed}", derive_addr(keypair(seed))))
    rows.append(("prop_addr_minihf_false_implies_false", prop_addr(th, sha(imp_refl))))
    zero = bytes(32)
    rp = random_prop(SeedStream(zero), 0, 0)
    rows.append(("random_prop_zero_seed_bytes", rp))
    rows.append(("random_prop_zero_seed_id", sha(rp)))
    rows.append(("auto_bounty_addr_zero_parent", prop_addr(th, sha(rp))))
    for name, value in rows:
        sys.stdout.write(f"{name} {value.hex()}\n")


if __name__ == "__main__":
    main()
