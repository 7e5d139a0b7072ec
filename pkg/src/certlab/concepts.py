"""Certificate-indexed concept classes, decision trees, and dimension oracles.

A standard-layout example is (z, i): an n-bit instance prefix followed by
an ell-bit index.  The uniform-layout variant puts the index first and
ignores the trailing bits entirely.  Index bits are read MSB-first; value+1
is a 1-indexed position into the codeword, positions beyond c*p are padding
and always labeled 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .bits import bits_to_int, check_bits, int_to_bits
from .codes import CodeParams, get_code
from .errors import BudgetError, FormatError, ShapeError
from .verifiers import DEFAULT_BUDGET_BITS, StepCounter, Verifier, first_certificate


@dataclass(frozen=True)
class ExampleLayout:
    """Shape of the example domain for one (verifier, code) pair."""

    n: int
    cp: int
    ell: int
    kind: str  # "standard" (z then index) or "uniform" (index then x)

    @classmethod
    def standard(cls, n: int, params: CodeParams, p: int) -> "ExampleLayout":
        cp = params.c * p
        return cls(n=n, cp=cp, ell=(cp - 1).bit_length(), kind="standard")

    @classmethod
    def uniform(cls, n: int, params: CodeParams, p: int) -> "ExampleLayout":
        cp = params.c * p
        return cls(n=n, cp=cp, ell=(cp - 1).bit_length(), kind="uniform")

    @property
    def example_len(self) -> int:
        return self.n + self.ell

    def split(self, x: str) -> tuple[str, str]:
        """Return (prefix-or-trailing part, index bits)."""
        check_bits(x, length=self.example_len, name="example")
        if self.kind == "standard":
            return x[: self.n], x[self.n :]
        return x[self.ell :], x[: self.ell]

    def join(self, z_part: str, i_bits: str) -> str:
        if self.kind == "standard":
            return z_part + i_bits
        return i_bits + z_part

    def index_position(self, i_bits: str) -> int:
        """1-indexed codeword position selected by the index bits."""
        return bits_to_int(i_bits) + 1


class CertConcept:
    """Reveals one bit of the encoded first certificate per useful example;
    constant 0 when the instance has no accepted certificate."""

    def __init__(
        self,
        verifier: Verifier,
        z: str,
        params: CodeParams,
        *,
        budget_bits: int = DEFAULT_BUDGET_BITS,
        counter: StepCounter | None = None,
    ) -> None:
        check_bits(z, length=verifier.n, name="z")
        self.verifier = verifier
        self.z = z
        self.params = params
        self.layout = ExampleLayout.standard(verifier.n, params, verifier.p)
        self.first_cert = first_certificate(verifier, z, budget_bits=budget_bits, counter=counter)
        if self.first_cert is None:
            self.enc = None
            self.support: frozenset[int] = frozenset()
        else:
            self.enc = get_code(params, verifier.p).encode(self.first_cert)
            self.support = frozenset(i for i, b in enumerate(self.enc) if b == "1")

    @property
    def sparsity(self) -> int:
        return len(self.support)

    def __call__(self, x: str) -> int:
        lay = self.layout
        check_bits(x, length=lay.example_len, name="example")
        if self.enc is None or x[: lay.n] != self.z:
            return 0
        pos = lay.index_position(x[lay.n :])
        if pos > lay.cp:
            return 0
        return 1 if (pos - 1) in self.support else 0

    def one_points(self) -> list[str]:
        """All examples labeled 1, in index order (at most c*p of them)."""
        lay = self.layout
        return [self.z + int_to_bits(i, lay.ell) for i in sorted(self.support)]


class UnifCertConcept:
    """Uniform-layout variant: the label is a codeword bit chosen by the
    leading index bits; the trailing instance-length bits are ignored."""

    def __init__(
        self,
        verifier: Verifier,
        z: str,
        params: CodeParams,
        *,
        budget_bits: int = DEFAULT_BUDGET_BITS,
        counter: StepCounter | None = None,
    ) -> None:
        check_bits(z, length=verifier.n, name="z")
        self.verifier = verifier
        self.z = z
        self.params = params
        self.layout = ExampleLayout.uniform(verifier.n, params, verifier.p)
        self.first_cert = first_certificate(verifier, z, budget_bits=budget_bits, counter=counter)
        if self.first_cert is None:
            self.enc = None
            self.support = frozenset()
        else:
            self.enc = get_code(params, verifier.p).encode(self.first_cert)
            self.support = frozenset(i for i, b in enumerate(self.enc) if b == "1")

    def __call__(self, x: str) -> int:
        lay = self.layout
        check_bits(x, length=lay.example_len, name="example")
        if self.enc is None:
            return 0
        pos = lay.index_position(x[: lay.ell])
        if pos > lay.cp:
            return 0
        return 1 if (pos - 1) in self.support else 0


# -- decision trees ------------------------------------------------------------


class Node:
    __slots__ = ("var", "lo", "hi")

    def __init__(self, var: int, lo, hi) -> None:
        self.var = var
        self.lo = lo
        self.hi = hi


@dataclass
class DecisionTree:
    """Binary decision tree; leaves are 0/1 ints, size is the leaf count."""

    root: object
    size: int

    @classmethod
    def of(cls, root) -> "DecisionTree":
        return cls(root=root, size=_count_leaves(root))


def _count_leaves(node) -> int:
    if isinstance(node, int):
        return 1
    return _count_leaves(node.lo) + _count_leaves(node.hi)


def dt_eval(tree: DecisionTree, x: str) -> int:
    node = tree.root
    while not isinstance(node, int):
        if node.var >= len(x):
            raise ShapeError(f"tree queries bit {node.var}, example has {len(x)}")
        node = node.hi if x[node.var] == "1" else node.lo
    return node


def build_decision_tree(concept: CertConcept) -> DecisionTree:
    """Exact tree for a concept: match the n prefix bits against z with
    early-exit 0, then fully query the index bits; constant-0 when the
    instance has no certificate."""
    if concept.enc is None:
        return DecisionTree(root=0, size=1)
    lay = concept.layout

    def index_subtree(depth: int, value: int):
        if depth == lay.ell:
            return 1 if (value < lay.cp and value in concept.support) else 0
        lo = index_subtree(depth + 1, value << 1)
        hi = index_subtree(depth + 1, (value << 1) | 1)
        return Node(lay.n + depth, lo, hi)

    cur = index_subtree(0, 0)
    for i in reversed(range(lay.n)):
        cur = Node(i, 0, cur) if concept.z[i] == "1" else Node(i, cur, 0)
    return DecisionTree.of(cur)


def serialize_tree(tree: DecisionTree) -> str:
    """Preorder token list: Q<var> for internal nodes, L<bit> for leaves."""
    out: list[str] = []

    def walk(node) -> None:
        if isinstance(node, int):
            out.append(f"L{node}")
        else:
            out.append(f"Q{node.var}")
            walk(node.lo)
            walk(node.hi)

    walk(tree.root)
    return " ".join(out)


def parse_tree(text: str) -> DecisionTree:
    tokens = text.split()
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(tokens):
            raise FormatError("tree text ends prematurely")
        tok = tokens[pos]
        pos += 1
        if tok.startswith("L"):
            if tok not in ("L0", "L1"):
                raise FormatError(f"bad leaf token {tok!r}")
            return int(tok[1])
        if tok.startswith("Q"):
            try:
                var = int(tok[1:])
            except ValueError:
                raise FormatError(f"bad query token {tok!r}") from None
            lo = read()
            hi = read()
            return Node(var, lo, hi)
        raise FormatError(f"bad token {tok!r}")

    root = read()
    if pos != len(tokens):
        raise FormatError("trailing tokens after tree")
    return DecisionTree.of(root)


def enumerate_class(
    verifier: Verifier,
    params: CodeParams,
    zs=None,
    *,
    budget_bits: int = DEFAULT_BUDGET_BITS,
    enum_bits: int = 20,
):
    """Yield (z, decision tree) for each seed instance, in the given order.

    Without an explicit seed list, enumerates all 2^n instance strings
    (budget-capped).
    """
    if zs is None:
        if verifier.n > enum_bits:
            raise BudgetError(
                f"enumerating 2^{verifier.n} instances exceeds the {enum_bits}-bit budget"
            )
        zs = (int_to_bits(v, verifier.n) for v in range(1 << verifier.n))
    for z in zs:
        concept = CertConcept(verifier, z, params, budget_bits=budget_bits)
        yield z, build_decision_tree(concept)


# -- dimension oracles ----------------------------------------------------------


def is_shattered(points, concepts, *, budget: int = 10_000_000) -> bool:
    """True iff every labeling of the points is realized by some concept."""
    pts = list(points)
    if (1 << len(pts)) * max(1, len(concepts)) > budget:
        raise BudgetError(f"shattering check for {len(pts)} points exceeds budget")
    if not pts:
        return True
    realized = {tuple(int(c(x)) for x in pts) for c in concepts}
    return len(realized) == 1 << len(pts)


def vc_dimension(concepts, domain, *, max_dim: int = 4, budget: int = 10_000_000) -> int:
    """Exact VC dimension of the concepts over the given finite domain.

    Brute force over all subsets of each size; sizes above max_dim raise
    a budget error rather than run forever.
    """
    pts = list(domain)
    concepts = list(concepts)
    dim = 0
    for d in range(1, min(len(pts), max_dim + 1) + 1):
        cost = 1
        for i in range(d):
            cost = cost * (len(pts) - i) // (i + 1)
        if cost * (1 << d) * max(1, len(concepts)) > budget:
            raise BudgetError(f"VC search at size {d} exceeds budget")
        found = False
        for subset in itertools.combinations(pts, d):
            if is_shattered(subset, concepts, budget=budget):
                found = True
                break
        if not found:
            return dim
        dim = d
        if d == max_dim + 1:
            raise BudgetError(f"VC dimension exceeds max_dim={max_dim}")
    return dim


@dataclass
class CertVcReport:
    dimension: int
    shattered_singleton: str | None
    candidate_points: int
    pairs_checked: int


def cert_class_vc(concepts: list[CertConcept]) -> CertVcReport:
    """Exact VC dimension of a CertConcept class over its full example domain.

    Sparsity makes this tractable: a point labeled 1 by no concept can only
    receive label 0, so it cannot sit in any shattered set (the all-ones
    labeling would be unrealizable).  Candidates are therefore the union of
    the concepts' 1-sets; all singletons and all candidate pairs are checked
    literally.  A report of dimension 2 means "at least 2" (a shattered pair
    was found and the search stopped).
    """
    n_concepts = len(concepts)
    full = (1 << n_concepts) - 1
    point_mask: dict[str, int] = {}
    for ci, concept in enumerate(concepts):
        for x in concept.one_points():
            point_mask[x] = point_mask.get(x, 0) | (1 << ci)

    singleton = None
    for x, mask in point_mask.items():
        # needs some concept labeling 1 and some labeling 0
        if mask != 0 and mask != full:
            singleton = x
            break

    pairs_checked = 0
    shattered_pair = None
    pts = list(point_mask)
    for a, b in itertools.combinations(pts, 2):
        pairs_checked += 1
        ma, mb = point_mask[a], point_mask[b]
        if not ma & mb:
            continue  # labeling (1,1) unrealizable
        if not ma & ~mb & full:
            continue  # labeling (1,0) unrealizable
        if not mb & ~ma & full:
            continue  # labeling (0,1) unrealizable
        if (ma | mb) == full:
            continue  # labeling (0,0) unrealizable
        shattered_pair = (a, b)
        break

    if shattered_pair is not None:
        dim = 2
    elif singleton is not None:
        dim = 1
    else:
        dim = 0
    return CertVcReport(
        dimension=dim,
        shattered_singleton=singleton,
        candidate_points=len(point_mask),
        pairs_checked=pairs_checked,
    )


def distinct_concept_count(concepts: list[CertConcept]) -> int:
    """Number of distinct functions: one per satisfiable instance plus the
    shared constant-0 function if any instance is unsatisfiable."""
    keys = set()
    for c in concepts:
        keys.add(("zero",) if c.enc is None else ("cert", c.z))
    return len(keys)
