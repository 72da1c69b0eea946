"""Conjugacy-class dimension bookkeeping in type A and the small-module ledger."""

from dataclasses import dataclass, field
from itertools import product
from math import factorial, gcd

from qenvelope.lattice import levi_splitting_index, weight_lattice
from qenvelope.rootdata import build_root_datum


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise ValueError("empty partition")
        if any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
            raise ValueError(f"{parts} is not a partition (positive, weakly decreasing)")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts):
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def size(self):
        return sum(self.parts)

    def transpose(self):
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))

    def __add__(self, other):
        """Componentwise sum (the partition of an induced class in type A)."""
        a, b = list(self.parts), list(other.parts)
        n = max(len(a), len(b))
        a += [0] * (n - len(a))
        b += [0] * (n - len(b))
        return Partition(tuple(x + y for x, y in zip(a, b)))

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions(n, max_part=None):
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def nilpotent_orbit_dim_A(p):
    """``k^2 - sum (p^T_i)^2`` for the class of Jordan type ``p`` in ``sl_k``."""
    if not isinstance(p, Partition):
        p = Partition(tuple(p))
    k = p.size
    return k * k - sum(c * c for c in p.transpose().parts)


def _root_count(datum, subset):
    return 2 * len(datum.subsystem_positive_roots(subset))


def induced_orbit_dim(datum, subset, dim_inner):
    """``|Phi| - |Phi_Pi| + dim_inner``."""
    return 2 * len(datum.positive_roots) - _root_count(datum, subset) + dim_inner


def richardson_levi_A(p):
    """Block sizes of a standard Levi whose trivial class induces to the class of ``p``."""
    if not isinstance(p, Partition):
        p = Partition(tuple(p))
    return p.transpose().parts


def levi_subset_from_blocks(blocks, offset=0):
    """Simple indices of the standard Levi of ``gl`` with consecutive diagonal blocks."""
    subset = []
    pos = offset
    for b in blocks:
        subset += list(range(pos, pos + b - 1))
        pos += b
    return tuple(subset)


def blocks_from_subset(n, subset):
    """Inverse of :func:`levi_subset_from_blocks` for ``sl_{n+1}``."""
    subset = set(subset)
    blocks, size = [], 1
    for i in range(n):
        if i in subset:
            size += 1
        else:
            blocks.append(size)
            size = 1
    blocks.append(size)
    return tuple(blocks)


@dataclass(frozen=True)
class OrbitDescriptor:
    """A class described by the Levi of its semisimple part and per-factor unipotent data."""

    datum: object
    levi: tuple
    unipotent_data: tuple
    dim: int

    def __post_init__(self):
        if self.dim < 0 or self.dim % 2:
            raise ValueError(f"class dimension must be even and nonnegative, got {self.dim}")


def descriptor_A(n, levi=(), unipotent=None):
    """Descriptor in ``sl_{n+1}``; ``unipotent`` holds one partition per Levi block."""
    datum = build_root_datum("A", n)
    blocks = blocks_from_subset(n, levi)
    if unipotent is None:
        unipotent = tuple(Partition((1,) * b) for b in blocks)
    unipotent = tuple(u if isinstance(u, Partition) else Partition(tuple(u)) for u in unipotent)
    if tuple(u.size for u in unipotent) != blocks:
        raise ValueError(f"unipotent data {unipotent} does not match Levi blocks {blocks}")
    inner = sum(nilpotent_orbit_dim_A(u) for u in unipotent)
    return OrbitDescriptor(datum, tuple(sorted(levi)), unipotent, induced_orbit_dim(datum, levi, inner))


def dckp_bound(ell, descriptor):
    """``ell ** (dim / 2)``; accepts a descriptor or a plain dimension."""
    dim = descriptor.dim if isinstance(descriptor, OrbitDescriptor) else int(descriptor)
    if dim < 0 or dim % 2:
        raise ValueError(f"class dimension must be even and nonnegative, got {dim}")
    return ell ** (dim // 2)


def module_induction_dim(dim_v, datum, subset, ell):
    """``ell ** ((|Phi| - |Phi_Pi|) / 2) * dim_v``."""
    diff = 2 * len(datum.positive_roots) - _root_count(datum, subset)
    return ell ** (diff // 2) * dim_v


def is_induced_A(p):
    """Whether the unipotent class ``p`` is induced from a class in a proper Levi."""
    if not isinstance(p, Partition):
        p = Partition(tuple(p))
    k = p.size
    # every proper Levi sits in a maximal one and induction is transitive
    for a in range(1, k):
        for q1 in partitions(a):
            for q2 in partitions(k - a):
                if Partition(q1) + Partition(q2) == p:
                    return True
    return False


def is_rigid_A(p):
    return not is_induced_A(p)


@dataclass
class LedgerReport:
    n: int
    ell: int
    levi: tuple
    unipotent: tuple
    hypothesis_ok: bool
    certified: bool
    orbit_dim: int
    module_dim: int
    bound: int
    richardson_levi: tuple
    lines: list = field(default_factory=list)
    dims_match: bool = False

    @property
    def status(self):
        if not self.hypothesis_ok:
            return "hypothesis-failed"
        return "certified" if self.certified else "falsified"


def small_module_ledger_A(n, ell, levi=(), unipotent=None, lattice=None):
    """Dimension certificate for a small module of ``U_eta(sl_{n+1})``.

    The class has semisimple part with centralizer the standard Levi ``levi``
    and unipotent part given per Levi block. Each factor's unipotent class is
    Richardson from the transpose Levi, so the module is induced from a
    1-dimensional module of the combined Levi ``Pi'``.
    """
    datum = build_root_datum("A", n)
    lattice = lattice or weight_lattice(datum)
    desc = descriptor_A(n, levi, unipotent)
    blocks = blocks_from_subset(n, levi)
    hyp = gcd(ell, factorial(n + 1)) == 1
    lines = []
    if not hyp:
        lines.append(f"hypothesis fails: gcd({ell}, {n + 1}!) = {gcd(ell, factorial(n + 1))}")
    inner_levi = []
    offset = 0
    inner_blocks = []
    for b, part in zip(blocks, desc.unipotent_data):
        rl = richardson_levi_A(part)
        inner_blocks += list(rl)
        inner_levi += list(levi_subset_from_blocks(rl, offset))
        dim_factor = nilpotent_orbit_dim_A(part)
        lines.append(
            f"factor sl{b}: class {part} is Richardson from blocks {rl}; dim {dim_factor}"
        )
        offset += b
    inner_levi = tuple(inner_levi)
    split = levi_splitting_index(lattice, inner_levi)
    split_ok = gcd(split, ell) == 1
    lines.append(f"Levi splitting index {split} for Pi' = {inner_levi}: coprime to ell = {split_ok}")
    lines.append("Levi hypothesis on the centralizer recorded as an assumption")
    # 1-dim module of the Levi, induced up to g
    module_dim = module_induction_dim(1, datum, inner_levi, ell)
    half_chain = (2 * len(datum.positive_roots) - _root_count(datum, inner_levi)) // 2
    half_direct = (
        2 * len(datum.positive_roots) - _root_count(datum, levi)
    ) // 2 + sum(nilpotent_orbit_dim_A(u) for u in desc.unipotent_data) // 2
    lines.append(f"half dim chain {half_chain} vs half dim O {half_direct}")
    bound = dckp_bound(ell, desc)
    lines.append(f"induced module dim {module_dim} vs DCKP bound {bound}")
    dims_match = half_chain == half_direct and module_dim == bound
    certified = hyp and split_ok and dims_match
    return LedgerReport(
        n, ell, desc.levi, desc.unipotent_data, hyp, certified, desc.dim, module_dim, bound,
        tuple(inner_blocks), lines, dims_match,
    )


TSV_COLUMNS = ("type", "rank", "ell", "partition", "dim_O", "dckp_bound", "richardson_levi", "status")


def dckp_table(ranks, ells):
    """Rows for every unipotent class of ``sl_{n+1}``, ``n`` in ``ranks``."""
    rows = []
    for n, ell in product(ranks, ells):
        for parts in partitions(n + 1):
            rep = small_module_ledger_A(n, ell, tuple(range(n)), (Partition(parts),))
            rows.append(
                (
                    "A",
                    n,
                    ell,
                    str(Partition(parts)),
                    rep.orbit_dim,
                    rep.bound,
                    "(" + ",".join(map(str, rep.richardson_levi)) + ")",
                    rep.status,
                )
            )
    return rows


def format_tsv(rows, columns=TSV_COLUMNS):
    out = ["\t".join(columns)]
    out += ["\t".join(str(x) for x in r) for r in rows]
    return "\n".join(out) + "\n"
