"""Enumerate class-fusion maps from a subgroup table into an ambient table.

A fusion map sends each subgroup class to the ambient class containing it.
The engine enumerates all total maps satisfying the fixed constraint set:

  * equal element orders,
  * subgroup centralizer order divides ambient centralizer order,
  * commutation with every stored prime power map,
  * every restricted ambient irreducible decomposes into subgroup
    irreducibles with non-negative integral multiplicities.

Backtracking assigns the class with the smallest candidate set first,
re-propagates power-map constraints after each assignment, and prunes with
exact coordinatewise interval bounds on scalar-product numerators; at each
leaf the decomposition test runs over the full ambient irreducible set, so
the result set does not depend on which irreducibles were used for pruning.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .chartab import CharacterTable
from .cyclo import Value, value_vector

CandidateSets = list  # per subgroup class index, a set of ambient class indices


class NoFusionPossible(ValueError):
    """Some subgroup class has no consistent ambient candidate."""

    def __init__(self, message: str, cls: int | None = None):
        super().__init__(message)
        self.cls = cls


class SearchAborted(RuntimeError):
    """Node limit exceeded; carries the statistics gathered so far."""

    def __init__(self, stats: "SearchStats"):
        super().__init__(f"search aborted after {stats.nodes} nodes")
        self.stats = stats


@dataclass(frozen=True)
class FusionMap:
    """A total map: images[c] is the ambient class index for subgroup class c."""

    images: tuple[int, ...]

    def __getitem__(self, c: int) -> int:
        return self.images[c]

    def __len__(self) -> int:
        return len(self.images)

    def as_labels(self, sub: CharacterTable, amb: CharacterTable) -> dict[str, str]:
        return {
            sub.class_name(c): amb.class_name(x)
            for c, x in enumerate(self.images)
        }


@dataclass
class SearchOptions:
    # ambient irreducibles used for in-search pruning; None = automatic
    # (every row for small tables, the 12 smallest degrees otherwise)
    prune_irreducibles: Sequence[int] | int | None = None
    pair_budget: int = 48          # pruning pairs evaluated per interior node
    node_limit: int | None = None  # abort threshold on explored nodes
    modular_limit: int = 10_000    # max |S| for modular reachability pruning


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    pruned: int = 0
    solutions: int = 0


@dataclass
class SearchResult:
    maps: tuple[FusionMap, ...]
    stats: SearchStats

    def __iter__(self):
        return iter(self.maps)

    def __len__(self):
        return len(self.maps)

    def to_json(self, sub: CharacterTable, amb: CharacterTable) -> dict:
        return {
            "sub": sub.name,
            "amb": amb.name,
            "maps": [list(m.images) for m in self.maps],
            "count": len(self.maps),
        }


# ----------------------------------------------------------------------
# candidate initialization and propagation


def init_candidates(sub: CharacterTable, amb: CharacterTable) -> CandidateSets:
    """Per subgroup class: ambient classes of equal element order whose
    centralizer order is divisible by the subgroup centralizer order."""
    cands: CandidateSets = []
    for c, ci in enumerate(sub.classes):
        if c == 0:
            cands.append({0})
            continue
        options = {
            x
            for x in amb.classes_of_order(ci.order)
            if amb.classes[x].centralizer % ci.centralizer == 0
        }
        if not options:
            raise NoFusionPossible(
                f"no ambient candidate for class {ci.name} "
                f"(order {ci.order}, centralizer {ci.centralizer})",
                cls=c,
            )
        cands.append(options)
    return cands


def _power_constraint_maps(
    sub: CharacterTable, amb: CharacterTable
) -> list[tuple[list[int | None], list[int]]]:
    """Per prime with maps on both sides, the (subgroup map, ambient map)
    pair used for commutation constraints.  Constraints cover every prime
    the ambient table stores a map for: the subgroup-side k-th power class
    is derived through congruent representatives where possible (a class
    entry of None means the constraint is skipped for that class)."""
    from .chartab import DataIncompleteError

    pairs = []
    for p in sorted(set(sub.power_maps) | set(amb.power_maps)):
        if p not in amb.power_maps:
            continue
        apm = list(amb.power_maps[p])
        spm: list[int | None] = []
        any_known = False
        for c in range(len(sub)):
            try:
                spm.append(sub.power_class(c, p))
                any_known = True
            except DataIncompleteError:
                spm.append(None)
        if any_known:
            pairs.append((spm, apm))
    return pairs


def propagate(
    cands: CandidateSets,
    sub: CharacterTable,
    amb: CharacterTable,
    power_pairs: list | None = None,
) -> CandidateSets:
    """Fixed point of power-map consistency: remove x from candidates(c)
    when x^p cannot serve class c^p, and keep only p-th power images of
    candidates(c) as candidates for c^p."""
    cands = [set(s) for s in cands]
    if power_pairs is None:
        power_pairs = _power_constraint_maps(sub, amb)
    n = len(cands)
    changed = True
    while changed:
        changed = False
        for spm, apm in power_pairs:
            for c in range(n):
                d = spm[c]
                if d is None:
                    continue
                allowed = {x for x in cands[c] if apm[x] in cands[d]}
                if len(allowed) != len(cands[c]):
                    cands[c] = allowed
                    changed = True
                if not allowed:
                    raise NoFusionPossible(
                        f"power-map propagation emptied class "
                        f"{sub.class_name(c)}",
                        cls=c,
                    )
                images = {apm[x] for x in cands[c]}
                cut = cands[d] & images
                if len(cut) != len(cands[d]):
                    cands[d] = cut
                    changed = True
                if not cut:
                    raise NoFusionPossible(
                        f"power-map propagation emptied class "
                        f"{sub.class_name(d)}",
                        cls=d,
                    )
    return cands


# ----------------------------------------------------------------------
# decomposition test


@dataclass
class DecompositionWitness:
    chi: int
    psi: int
    detail: str

    def __str__(self) -> str:
        return f"<chi_{self.chi} o f, psi_{self.psi}> fails: {self.detail}"


def decomposition_test(
    fmap: FusionMap | Sequence[int],
    sub: CharacterTable,
    amb: CharacterTable,
    irreducibles: Sequence[int] | None = None,
) -> tuple[bool, DecompositionWitness | None]:
    """True iff every tested <chi o f, psi> is a non-negative rational
    integer; on failure returns the witnessing pair and offending value."""
    images = fmap.images if isinstance(fmap, FusionMap) else tuple(fmap)
    rows = range(len(amb)) if irreducibles is None else irreducibles
    n = len(sub)
    sizes = [ci.size for ci in sub.classes]
    order = sub.order
    for i in rows:
        chi = amb.irreducibles[i]
        theta = [chi[x] for x in images]
        for j in range(n):
            psi_conj = sub.conj_row(j)
            s: Value = 0
            for c in range(n):
                s = s + sizes[c] * (theta[c] * psi_conj[c])
            if isinstance(s, int):
                q, r = divmod(s, order)
                if r:
                    return False, DecompositionWitness(i, j, f"{s}/{order} not integral")
                if q < 0:
                    return False, DecompositionWitness(i, j, f"multiplicity {q} < 0")
            else:
                return False, DecompositionWitness(i, j, f"irrational value {s!r}")
    return True, None


# ----------------------------------------------------------------------
# incremental pruning: exact interval bounds on scalar-product numerators,
# coordinatewise over the power basis of the pair's conductor


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _galois_blocks(sub, amb, domain, power_pairs):
    """Partition subgroup classes into blocks whose assignments force each
    other through bijective (order-preserving) power-map links, and record
    per block how a candidate for the representative propagates to every
    member on the ambient side.

    Returns a list of blocks [(rep, [(member, image_fn_chain)...])] where
    each member's forced ambient image is obtained by applying the listed
    ambient power maps to the representative's candidate."""
    n = len(sub)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    links = []  # (src, dst, ambient map) for equal-order forced links
    for spm, apm in power_pairs:
        for c in range(n):
            d = spm[c]
            if d is None or d == c:
                continue
            if sub.classes[c].order == sub.classes[d].order:
                links.append((c, d, apm))
                ra, rb = find(c), find(d)
                if ra != rb:
                    parent[ra] = rb

    blocks = []
    members_of = {}
    for c in range(n):
        members_of.setdefault(find(c), []).append(c)
    for root, members in sorted(members_of.items()):
        rep = min(members, key=lambda c: (len(domain[c]), c))
        # BFS the forced-image chains from rep along links
        chains = {rep: ()}
        frontier = [rep]
        adj = {}
        for c, d, apm in links:
            adj.setdefault(c, []).append((d, apm))
            # reverse links need the inverse ambient map; restrict to the
            # forward orientation and rely on connectivity via both orders
        while frontier:
            new = []
            for c in frontier:
                for d, apm in adj.get(c, ()):
                    if d not in chains:
                        chains[d] = chains[c] + (apm,)
                        new.append(d)
            frontier = new
        if len(chains) != len(members):
            # some members only reachable against link direction: fall back
            # to singleton blocks for the unreached ones
            reached = [(m, chains[m]) for m in members if m in chains]
            blocks.append((rep, reached))
            for m in members:
                if m not in chains:
                    blocks.append((m, [(m, ())]))
        else:
            blocks.append((rep, [(m, chains[m]) for m in members]))
    return blocks


class _PairPruner:
    """For one (ambient irreducible chi, subgroup irreducible psi) pair:
    per Galois block, the integer coefficient vector of
    sum_{c in block} size(c) * chi(forced image of x at c) * conj(psi(c))
    for each candidate x of the block representative.  Feasibility requires
    that the block-choice totals can still form a non-negative multiple of
    |S| in coordinate 0 with all other power-basis coordinates vanishing;
    coordinate 0 is checked by interval bounds and (for small |S|) by exact
    modular reachability."""

    __slots__ = ("sub", "amb", "chi_idx", "psi_idx", "domain", "blocks",
                 "veclen", "table", "order", "mod_table")

    def __init__(self, sub, amb, chi_idx, psi_idx, domain, blocks, use_modular):
        self.sub = sub
        self.amb = amb
        self.chi_idx = chi_idx
        self.psi_idx = psi_idx
        self.domain = domain
        self.blocks = blocks
        self.order = sub.order
        self.table = None
        self.mod_table = None if use_modular else False

    def _build(self):
        sub, amb, domain = self.sub, self.amb, self.domain
        chi = amb.irreducibles[self.chi_idx]
        psi_conj = sub.conj_row(self.psi_idx)
        conductor = 1
        for c in range(len(sub)):
            pc = psi_conj[c]
            if not isinstance(pc, int):
                conductor = _lcm(conductor, pc.n)
            for x in domain[c]:
                v = chi[x]
                if not isinstance(v, int):
                    conductor = _lcm(conductor, v.n)
        table = []
        for rep, members in self.blocks:
            entry = {}
            for x in domain[rep]:
                total: Value = 0
                for m, chain in members:
                    img = x
                    for apm in chain:
                        img = apm[img]
                    total = total + sub.classes[m].size * (psi_conj[m] * chi[img])
                entry[x] = tuple(value_vector(total, conductor))
            table.append(entry)
        self.table = table
        self.veclen = len(next(iter(table[0].values())))
        if self.mod_table is None:
            q = self.order
            self.mod_table = [
                {x: vec[0] % q for x, vec in entry.items()} for entry in table
            ]

    def feasible(self, cands: CandidateSets) -> bool:
        if self.table is None:
            self._build()
        L = self.veclen
        lo = [0] * L
        hi = [0] * L
        for b, (rep, _members) in enumerate(self.blocks):
            entry = self.table[b]
            options = cands[rep]
            if len(options) == 1:
                vec = entry[next(iter(options))]
                for l in range(L):
                    v = vec[l]
                    lo[l] += v
                    hi[l] += v
            else:
                vecs = [entry[x] for x in options]
                for l in range(L):
                    vals = [v[l] for v in vecs]
                    lo[l] += min(vals)
                    hi[l] += max(vals)
        k = hi[0] // self.order
        if k < 0 or k * self.order < lo[0]:
            return False
        for l in range(1, L):
            if lo[l] > 0 or hi[l] < 0:
                return False
        if self.mod_table:
            # exact reachability of residue 0 mod |S| in coordinate 0
            q = self.order
            full = (1 << q) - 1
            mask = 1
            for b, (rep, _members) in enumerate(self.blocks):
                entry = self.mod_table[b]
                shifts = {entry[x] for x in cands[rep]}
                acc = 0
                for t in shifts:
                    acc |= ((mask << t) | (mask >> (q - t))) & full if t else mask
                mask = acc
            if not (mask & 1):
                return False
        return True


class _Pruner:
    """Move-to-front schedule over lazily built pair pruners, evaluated
    within a per-node budget.  Pairs with the trivial subgroup character
    come first: their contributions are arrangement-insensitive and carry
    the strong modular constraints."""

    def __init__(self, sub, amb, domain, opts: SearchOptions, power_pairs):
        sel = opts.prune_irreducibles
        by_degree = sorted(range(len(amb)), key=lambda i: amb.irreducibles[i][0])
        if sel is None:
            rows = by_degree if len(amb) <= 64 else by_degree[:12]
        elif isinstance(sel, int):
            rows = by_degree[:sel]
        else:
            rows = list(sel)
        use_modular = sub.order <= opts.modular_limit
        blocks = _galois_blocks(sub, amb, domain, power_pairs)
        self.rows = rows
        self.uncovered_rows = [i for i in range(len(amb)) if i not in set(rows)]
        self.pairs = [
            _PairPruner(sub, amb, i, 0, domain, blocks, use_modular) for i in rows
        ] + [
            _PairPruner(sub, amb, i, j, domain, blocks, use_modular)
            for i in rows
            for j in range(1, len(sub))
        ]
        self.budget = opts.pair_budget

    def feasible(self, cands: CandidateSets, full: bool = False) -> bool:
        pairs = self.pairs
        limit = len(pairs) if full else min(self.budget, len(pairs))
        for k in range(limit):
            if not pairs[k].feasible(cands):
                if k:
                    pairs.insert(0, pairs.pop(k))
                return False
        return True


# ----------------------------------------------------------------------
# search


def search(
    sub: CharacterTable,
    amb: CharacterTable,
    cands: CandidateSets | None = None,
    opts: SearchOptions | None = None,
) -> SearchResult:
    """All total fusion maps satisfying the full constraint set.

    Deterministic as a set; the returned maps are sorted lexicographically.
    Raises SearchAborted when opts.node_limit is exceeded.
    """
    opts = opts or SearchOptions()
    if cands is None:
        cands = init_candidates(sub, amb)
    power_pairs = _power_constraint_maps(sub, amb)
    cands = propagate(cands, sub, amb, power_pairs)
    pruner = _Pruner(sub, amb, cands, opts, power_pairs)
    stats = SearchStats()
    solutions: list[tuple[int, ...]] = []

    def descend(state: CandidateSets) -> None:
        stats.nodes += 1
        if opts.node_limit is not None and stats.nodes > opts.node_limit:
            raise SearchAborted(stats)
        best, best_size = -1, None
        for c, options in enumerate(state):
            k = len(options)
            if k > 1 and (best_size is None or k < best_size):
                best, best_size = c, k
        if best < 0:
            stats.leaves += 1
            # on singletons the pruner's bounds are exact, so a full-budget
            # pass decides its rows; only uncovered rows need the direct test
            if not pruner.feasible(state, full=True):
                return
            images = tuple(next(iter(s)) for s in state)
            if pruner.uncovered_rows:
                ok, _ = decomposition_test(images, sub, amb, pruner.uncovered_rows)
                if not ok:
                    return
            stats.solutions += 1
            solutions.append(images)
            return
        for x in sorted(state[best]):
            child = [set(s) for s in state]
            child[best] = {x}
            try:
                child = propagate(child, sub, amb, power_pairs)
            except NoFusionPossible:
                continue
            if not pruner.feasible(child):
                stats.pruned += 1
                continue
            descend(child)

    descend(cands)
    return SearchResult(tuple(FusionMap(s) for s in sorted(solutions)), stats)


def verify_fusion(
    fmap: FusionMap, sub: CharacterTable, amb: CharacterTable
) -> bool:
    """Independent re-check of the FusionMap invariants: power-map
    commutation for every shared prime, and the full decomposition test."""
    images = fmap.images
    if images[0] != 0:
        return False
    for c, ci in enumerate(sub.classes):
        if amb.classes[images[c]].order != ci.order:
            return False
        if amb.classes[images[c]].centralizer % ci.centralizer:
            return False
    for spm, apm in _power_constraint_maps(sub, amb):
        for c in range(len(sub)):
            if spm[c] is not None and images[spm[c]] != apm[images[c]]:
                return False
    ok, _ = decomposition_test(fmap, sub, amb)
    return ok
