"""Type D structures, A-infinity modules, and the box tensor product.

Both module types are finitely generated over the idempotent ring of a
pointed matched circle.  Generators carry a k-element idempotent subset (the
middle summand), a Z/2 grading m, and an optional half-integer Alexander
grading a.  A type D structure records delta as a list of coefficient
triples (src, algebra element, dst); an A-infinity module records the finite
list of nonzero operations m_i(x, a_1, ..., a_{i-1}) = y with every a_j a
basis element of A(Z, 0).

The box tensor product pairs generators with equal idempotent subsets (the
type D idempotent already records the unoccupied arcs, so equality is the
complementarity condition) and assembles the differential from the finite
sum of (m_k tensor id) o (id tensor delta_{k-1}).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import strands
from .grading import m_of
from .pmc import PointedMatchedCircle
from .strands import AlgebraElement, AZBasis, multiply, differential, pinch


class StructureEquationFails(ValueError):
    pass


class GradingIncompatible(ValueError):
    pass


class AInfRelationFails(ValueError):
    pass


class BothUnbounded(ValueError):
    pass


class PmcMismatch(ValueError):
    pass


class Unbounded(ValueError):
    pass


@dataclass(frozen=True)
class ModuleGenerator:
    name: str
    idempotent: frozenset[int]
    m: int
    a: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "idempotent", frozenset(self.idempotent))
        object.__setattr__(self, "m", self.m % 2)
        if self.a is not None:
            object.__setattr__(self, "a", Fraction(self.a))


def _check_generators(pmc, generators):
    k = pmc.genus
    table = {}
    for g in generators:
        if len(g.idempotent) != k:
            raise ValueError(f"{g.name}: idempotent must have {k} elements")
        if not all(1 <= i <= 2 * k for i in g.idempotent):
            raise ValueError(f"{g.name}: idempotent outside [2k]")
        if g.name in table:
            raise ValueError(f"duplicate generator name {g.name}")
        table[g.name] = g
    return table


class TypeDStructure:
    def __init__(self, pmc: PointedMatchedCircle, generators, delta):
        """delta entries are (src_name, AlgebraElement, dst_name)."""
        self.pmc = pmc
        self.generators = _check_generators(pmc, generators)
        self.delta = []
        for src, coeff, dst in delta:
            gs, gd = self.generators[src], self.generators[dst]
            if not coeff:
                raise ValueError(f"zero coefficient on {src}->{dst}")
            pinched = pinch(pmc, gs.idempotent, coeff, gd.idempotent)
            if pinched != coeff:
                raise ValueError(
                    f"coefficient on {src}->{dst} not compatible with idempotents")
            self.delta.append((src, coeff, dst))

    def delta_map(self) -> dict[str, list[tuple[AlgebraElement, str]]]:
        out: dict[str, list] = {name: [] for name in self.generators}
        for src, coeff, dst in self.delta:
            out[src].append((coeff, dst))
        return out


class AInfModule:
    def __init__(self, pmc: PointedMatchedCircle, generators, ops):
        """ops entries are (x_name, [AlgebraElement, ...], y_name) for m_i."""
        self.pmc = pmc
        self.generators = _check_generators(pmc, generators)
        self.basis = AZBasis(pmc, 0)
        self.ops = []
        for x, algs, y in ops:
            gx, gy = self.generators[x], self.generators[y]
            ids = []
            left = gx.idempotent
            for a in algs:
                s, t = strands.left_right_pairs(pmc, a)
                if s != left:
                    raise ValueError(f"op ({x}; ...) breaks idempotent chain")
                decomp = self.basis.decompose(a)
                if len(decomp) != 1:
                    raise ValueError("operation inputs must be single basis elements")
                if all(g.is_idempotent() for g in a.terms):
                    raise ValueError("idempotent inputs are implicit, not stored")
                ids.append(decomp[0])
                left = t
            if left != gy.idempotent:
                raise ValueError(f"op ({x}; ...; {y}) output idempotent mismatch")
            self.ops.append((x, tuple(ids), y))
        self._table: dict[tuple[str, tuple[int, ...]], set[str]] = {}
        for x, ids, y in self.ops:
            key = (x, ids)
            self._table.setdefault(key, set())
            self._table[key] ^= {y}

    def max_arity(self) -> int:
        return max((len(ids) + 1 for _, ids, _ in self.ops), default=1)

    def _is_idempotent_index(self, idx: int) -> frozenset[int] | None:
        el = self.basis.elements[idx]
        if all(g.is_idempotent() for g in el.terms):
            s, _ = strands.left_right_pairs(self.pmc, el)
            return s
        return None

    def eval_m(self, x: str, input_indices: tuple[int, ...]) -> set[str]:
        """m_{1+len(inputs)}(x, ...) as an F2 set of generator names.

        Unitality is built in: m_2(x, I(o(x))) = x, and higher operations
        with an idempotent input vanish.
        """
        idem_positions = [self._is_idempotent_index(i) for i in input_indices]
        if any(s is not None for s in idem_positions):
            if len(input_indices) == 1:
                s = idem_positions[0]
                return {x} if s == self.generators[x].idempotent else set()
            return set()
        return set(self._table.get((x, input_indices), set()))


@dataclass
class ChainComplex:
    """F2 chain complex with Z/2 (and optional Alexander) graded generators."""

    generators: dict = field(default_factory=dict)
    differential: frozenset = frozenset()  # frozenset of (src, dst)

    def __post_init__(self):
        for src, dst in self.differential:
            gs, gd = self.generators[src], self.generators[dst]
            if (gs.m - gd.m) % 2 != 1:
                raise GradingIncompatible(
                    f"differential {src}->{dst} does not lower m by 1")
        sq: set[tuple[str, str]] = set()
        adj: dict[str, set[str]] = {}
        for src, dst in self.differential:
            adj.setdefault(src, set()).add(dst)
        for src, dst in self.differential:
            for dst2 in adj.get(dst, ()):
                key = (src, dst2)
                sq ^= {key}
        if sq:
            raise ValueError(f"differential does not square to zero: {sorted(sq)}")


def check_type_d(N: TypeDStructure, check_gradings: bool = True) -> None:
    """Verify the structure equation and the coefficient grading relation."""
    dmap = N.delta_map()
    residual: dict[tuple[str, str], AlgebraElement] = {}

    def add(key, elem):
        cur = residual.get(key)
        residual[key] = elem if cur is None else cur + elem

    for src, coeff, dst in N.delta:
        d = differential(coeff)
        if d:
            add((src, dst), d)
        for coeff2, dst2 in dmap[dst]:
            prod = multiply(coeff, coeff2)
            if prod:
                add((src, dst2), prod)
    for (src, dst), elem in residual.items():
        if elem:
            raise StructureEquationFails(
                f"residual {elem} from {src} to {dst}")

    if check_gradings:
        for src, coeff, dst in N.delta:
            mc = m_of(coeff, N.pmc)
            ms, md = N.generators[src].m, N.generators[dst].m
            if (ms - mc - md - 1) % 2 != 0:
                raise GradingIncompatible(
                    f"{src}->{dst}: m({src})={ms} but m(coeff)+m({dst})+1="
                    f"{(mc + md + 1) % 2}")


def is_bounded(N: TypeDStructure) -> bool:
    """True iff the coefficient digraph is acyclic."""
    adj: dict[str, set[str]] = {name: set() for name in N.generators}
    for src, _, dst in N.delta:
        adj[src].add(dst)
    state: dict[str, int] = {}

    def visit(v) -> bool:
        state[v] = 1
        for w in adj[v]:
            s = state.get(w, 0)
            if s == 1 or (s == 0 and not visit(w)):
                return False
        state[v] = 2
        return True

    return all(visit(v) for v in N.generators if state.get(v, 0) == 0)


def delta_k(N: TypeDStructure, x: str, k: int) -> set[tuple]:
    """The k-fold iterate of delta as an F2 set of (g_1, ..., g_k, name) keys.

    Keys spell algebra factors as strands generators, so cancellation is a
    symmetric difference.  delta_0 is the identity.
    """
    if k > len(N.generators) and not is_bounded(N):
        raise Unbounded(
            f"iterating delta {k} times on an unbounded structure")
    current: set[tuple] = {((), x)}
    dmap = N.delta_map()
    for _ in range(k):
        nxt: set[tuple] = set()
        for prefix, y in current:
            for coeff, z in dmap[y]:
                for g in coeff.terms:
                    nxt ^= {(prefix + (g,), z)}
        current = nxt
    return current


def _candidate_tuples(M: AInfModule, length: int):
    basis_size = len(M.basis)
    if basis_size ** length <= 100_000:
        yield from itertools.product(range(basis_size), repeat=length)
        return
    seen = set()
    recorded = [ids for _, ids, _ in M.ops]
    for ids in recorded:
        for start in range(len(ids) - length + 1):
            seen.add(ids[start:start + length])
    for a, b in itertools.product(recorded, repeat=2):
        joint = a + b
        for start in range(max(0, len(joint) - length + 1)):
            if start + length <= len(joint):
                seen.add(joint[start:start + length])
    yield from seen


def check_ainf(M: AInfModule) -> None:
    """Verify the A-infinity relations through max arity plus one."""
    basis = M.basis
    products: dict[tuple[int, int], tuple[int, ...]] = {}
    differentials: dict[int, tuple[int, ...]] = {}
    for i, el in enumerate(basis.elements):
        d = differential(el)
        differentials[i] = basis.decompose(d) if d else ()
    for i, j in itertools.product(range(len(basis)), repeat=2):
        p = multiply(basis.elements[i], basis.elements[j])
        products[(i, j)] = basis.decompose(p) if p else ()

    max_n = M.max_arity() + 1
    for n in range(1, max_n + 1):
        for x in M.generators:
            for ids in _candidate_tuples(M, n - 1):
                ids = tuple(ids)
                total: set[str] = set()
                # m_i(m_j(x, a_1..a_{j-1}), a_j..a_{n-1})
                for j in range(1, n + 1):
                    inner = M.eval_m(x, ids[:j - 1])
                    for y in inner:
                        total ^= M.eval_m(y, ids[j - 1:])
                # differentials of single inputs
                for pos in range(n - 1):
                    for rep in differentials[ids[pos]]:
                        total ^= M.eval_m(x, ids[:pos] + (rep,) + ids[pos + 1:])
                # products of adjacent inputs
                for pos in range(n - 2):
                    for rep in products[(ids[pos], ids[pos + 1])]:
                        total ^= M.eval_m(
                            x, ids[:pos] + (rep,) + ids[pos + 2:])
                if total:
                    raise AInfRelationFails(
                        f"arity {n} at x={x}, inputs {ids}: residual {sorted(total)}")


def box_tensor(M: AInfModule, N: TypeDStructure, weight: int = 1) -> ChainComplex:
    """M box N with m additive and a(x ox y) = a(x) + weight * a(y).

    A finite operation list always bounds the A-side, so the differential
    sum stops at the maximal recorded arity even when N has delta cycles.
    """
    if M.pmc != N.pmc:
        raise PmcMismatch("modules over different pointed matched circles")
    max_chain = M.max_arity() - 1

    gens = {}
    for xm in M.generators.values():
        for yn in N.generators.values():
            if xm.idempotent == yn.idempotent:
                a = None
                if xm.a is not None or yn.a is not None:
                    a = (xm.a or Fraction(0)) + weight * (yn.a or Fraction(0))
                gens[(xm.name, yn.name)] = ModuleGenerator(
                    name=f"{xm.name}*{yn.name}",
                    idempotent=xm.idempotent,
                    m=(xm.m + yn.m) % 2,
                    a=a)

    dmap = N.delta_map()
    diff: set[tuple] = set()
    for (xn, yn) in gens:
        # chains y -> y1 -> ... of length k-1 in N, consumed by m_k on the A side
        chains: set[tuple] = {((), yn)}
        for length in range(0, max_chain + 1):
            for ids, yend in chains:
                for out in M.eval_m(xn, ids):
                    if (out, yend) in gens:
                        diff ^= {((xn, yn), (out, yend))}
            if length == max_chain:
                break
            nxt: set[tuple] = set()
            for ids, yend in chains:
                for coeff, z in dmap[yend]:
                    for b in M.basis.decompose(coeff):
                        nxt ^= {(ids + (b,), z)}
            chains = nxt

    return ChainComplex(
        generators={gens[k].name: gens[k] for k in gens},
        differential=frozenset((gens[a].name, gens[b].name) for a, b in diff))
