"""Finite permutation groups given by generators.

Permutations are tuples of images on range(degree), composed left to
right of the argument: apply(compose_perm(p, q), x) = p[q[x]], so
compose_perm(p, q) means "q first, then p".  Groups keep their
elements in sorted order so everything downstream serializes stably.
"""

from fractions import Fraction
from math import gcd


def identity_perm(n):
    return tuple(range(n))


def compose_perm(p, q):
    """p after q."""
    return tuple(p[q[i]] for i in range(len(q)))


def inverse_perm(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_order(p):
    n = 1
    q = p
    e = identity_perm(len(p))
    while q != e:
        q = compose_perm(p, q)
        n += 1
    return n


def perm_from_cycles(n, cycles):
    """Permutation of degree n from a list of cycles (0-based)."""
    img = list(range(n))
    for cyc in cycles:
        for i, a in enumerate(cyc):
            img[a] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


class PermGroup:
    """A permutation group generated by explicit permutations."""

    MAX_ORDER = 10000

    def __init__(self, degree, generators, name=None):
        self.degree = degree
        gens = []
        for g in generators:
            g = tuple(g)
            assert len(g) == degree and sorted(g) == list(range(degree)), \
                "not a permutation of degree %d: %r" % (degree, g)
            if g not in gens:
                gens.append(g)
        self.generators = tuple(gens)
        self.name = name
        self.elements = self._close()
        self._index = {g: i for i, g in enumerate(self.elements)}

    def _close(self):
        e = identity_perm(self.degree)
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for h in frontier:
                for g in self.generators:
                    p = compose_perm(g, h)
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
                        if len(seen) > self.MAX_ORDER:
                            raise ValueError("group order exceeds %d"
                                             % self.MAX_ORDER)
            frontier = nxt
        return tuple(sorted(seen))

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, p):
        return tuple(p) in self._index

    def __eq__(self, other):
        return (isinstance(other, PermGroup)
                and self.degree == other.degree
                and self.elements == other.elements)

    def __hash__(self):
        return hash((self.degree, self.elements))

    def __repr__(self):
        return "PermGroup(%s, degree=%d, order=%d)" % (
            self.name or "?", self.degree, self.order)

    def identity(self):
        return identity_perm(self.degree)

    def multiply(self, p, q):
        return compose_perm(p, q)

    def inverse(self, p):
        return inverse_perm(p)

    def is_subgroup_of(self, other):
        return (self.degree == other.degree
                and all(g in other for g in self.elements))

    def conjugacy_classes(self):
        """List of sorted tuples of elements; classes sorted by rep."""
        remaining = set(self.elements)
        classes = []
        for g in self.elements:
            if g not in remaining:
                continue
            cls = {compose_perm(compose_perm(s, g), inverse_perm(s))
                   for s in self.elements}
            remaining -= cls
            classes.append(tuple(sorted(cls)))
        classes.sort(key=lambda c: c[0])
        return classes

    def centralizer_order(self, g):
        return sum(1 for s in self.elements
                   if compose_perm(s, g) == compose_perm(g, s))

    def rational_classes(self):
        """Conjugacy classes merged under g ~ g^k with gcd(k, ord g)=1."""
        classes = self.conjugacy_classes()
        class_of = {}
        for i, cls in enumerate(classes):
            for g in cls:
                class_of[g] = i
        merged = []
        seen = set()
        for i in range(len(classes)):
            if i in seen:
                continue
            block = {i}
            changed = True
            while changed:
                changed = False
                for j in sorted(block):
                    h = classes[j][0]
                    m = perm_order(h)
                    q = h
                    for k in range(2, m + 1):
                        q = compose_perm(h, q)
                        if gcd(k, m) == 1 and class_of[q] not in block:
                            block.add(class_of[q])
                            changed = True
            seen |= block
            merged.append(tuple(sorted(block)))
        return merged

    def subgroups(self):
        """All subgroups, as a list of PermGroup, sorted by order.

        Brute force closure of joins of cyclic subgroups; fine for
        groups of order a few dozen.
        """
        cyclics = {}
        for g in self.elements:
            h = PermGroup(self.degree, [g])
            cyclics[h.elements] = h
        known = dict(cyclics)
        frontier = list(cyclics.values())
        while frontier:
            fresh = []
            for a in frontier:
                for b in list(known.values()):
                    gens = list(a.generators) + list(b.generators)
                    j = PermGroup(self.degree, gens)
                    if len(j.elements) > self.order:
                        continue
                    if j.elements not in known:
                        known[j.elements] = j
                        fresh.append(j)
            frontier = fresh
        subs = [h for h in known.values() if h.is_subgroup_of(self)]
        subs.sort(key=lambda h: (h.order, h.elements))
        return subs

    def action_on(self, points, gen_images=None):
        """Action of the group on a list of points.

        Without gen_images the points must be a union of orbits of the
        natural action on range(degree).  With gen_images (one
        permutation of the points per generator, given as index maps
        into `points`), the action is the homomorphic extension of the
        generator assignment; the extension is verified on the whole
        Cayley graph and then on all element pairs, so an assignment
        that does not define a homomorphism is rejected.

        Returns a dict element -> tuple of point indices (images).
        """
        points = list(points)
        npts = len(points)
        pos = {p: i for i, p in enumerate(points)}
        if gen_images is None:
            for g in self.generators:
                for p in points:
                    if not isinstance(p, int) or not 0 <= p < self.degree:
                        raise ValueError("point %r not in the natural domain"
                                         % (p,))
                    if g[p] not in pos:
                        raise ValueError(
                            "points not closed under the action: "
                            "generator %r moves %r outside the set" % (g, p))
            gen_images = [tuple(pos[g[p]] for p in points)
                          for g in self.generators]
        gen_images = [tuple(img) for img in gen_images]
        assert len(gen_images) == len(self.generators)
        for img in gen_images:
            assert sorted(img) == list(range(npts)), \
                "generator image is not a permutation of the points"
        e = self.identity()
        act = {e: identity_perm(npts)}
        frontier = [e]
        while frontier:
            nxt = []
            for h in frontier:
                for g, ig in zip(self.generators, gen_images):
                    p = compose_perm(g, h)
                    q = compose_perm(ig, act[h])
                    if p in act:
                        if act[p] != q:
                            raise ValueError(
                                "generator images do not extend to a "
                                "homomorphism (inconsistent at %r)" % (p,))
                    else:
                        act[p] = q
                        nxt.append(p)
            frontier = nxt
        if self.order <= 60:
            for a in self.elements:
                for b in self.elements:
                    if act[compose_perm(a, b)] != \
                            compose_perm(act[a], act[b]):
                        raise ValueError(
                            "generator images do not extend to a "
                            "homomorphism (fails at a pair)")
        return act

    def orbit_count(self, action):
        """Number of orbits of an action dict (elem -> point perm)."""
        npts = len(next(iter(action.values()))) if action else 0
        parent = list(range(npts))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for img in action.values():
            for i, j in enumerate(img):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
        return len({find(i) for i in range(npts)})

    def burnside_orbit_count(self, action):
        """Independent orbit count: average number of fixed points."""
        total = 0
        for g in self.elements:
            img = action[g]
            total += sum(1 for i, j in enumerate(img) if i == j)
        n = Fraction(total, self.order)
        assert n.denominator == 1
        return int(n)


def symmetric_group(n, name=None):
    if n <= 1:
        return PermGroup(max(n, 1), [], name=name or "S%d" % n)
    gens = [perm_from_cycles(n, [[0, 1]]), perm_from_cycles(n, [list(range(n))])]
    return PermGroup(n, gens, name=name or "S%d" % n)


def cyclic_group(n, name=None):
    if n == 1:
        return PermGroup(1, [], name=name or "Z1")
    return PermGroup(n, [perm_from_cycles(n, [list(range(n))])],
                     name=name or "Z%d" % n)


def alternating_group(n, name=None):
    if n <= 2:
        return PermGroup(max(n, 1), [], name=name or "A%d" % n)
    gens = []
    for i in range(n - 2):
        gens.append(perm_from_cycles(n, [[i, i + 1, i + 2]]))
    return PermGroup(n, gens, name=name or "A%d" % n)


def dihedral_group(n, name=None):
    """Symmetries of the n-gon, order 2n, degree n."""
    assert n >= 3
    rot = perm_from_cycles(n, [list(range(n))])
    ref = tuple((n - i) % n for i in range(n))
    return PermGroup(n, [rot, ref], name=name or "D%d" % n)


def klein_four(name="V4"):
    return PermGroup(4, [perm_from_cycles(4, [[0, 1], [2, 3]]),
                         perm_from_cycles(4, [[0, 2], [1, 3]])], name=name)


def quaternion_group(name="Q8"):
    """Order 8, acting on 8 points by the regular representation."""
    # elements 1,-1,i,-i,j,-j,k,-k as indices 0..7
    # i: 1->i->-1->-i->1, j->k->-j->-k->j
    gi = perm_from_cycles(8, [[0, 2, 1, 3], [4, 6, 5, 7]])
    gj = perm_from_cycles(8, [[0, 4, 1, 5], [2, 7, 3, 6]])
    return PermGroup(8, [gi, gj], name=name)


def direct_product(a, b, name=None):
    """Product group acting on the disjoint union of the two domains."""
    n = a.degree + b.degree
    gens = []
    for g in a.generators:
        gens.append(tuple(list(g) + [a.degree + i for i in range(b.degree)]))
    for h in b.generators:
        gens.append(tuple(list(range(a.degree)) + [a.degree + h[i]
                                                   for i in range(b.degree)]))
    return PermGroup(n, gens,
                     name=name or "%sx%s" % (a.name or "?", b.name or "?"))


def sl2_3(name="SL(2,3)"):
    """Order 24, acting on the 8 nonzero vectors of F_3^2."""
    vecs = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}

    def mat_perm(a, b, c, d):
        return tuple(pos[((a * v[0] + b * v[1]) % 3,
                          (c * v[0] + d * v[1]) % 3)] for v in vecs)

    s = mat_perm(0, -1, 1, 0)
    t = mat_perm(1, 1, 0, 1)
    return PermGroup(8, [s, t], name=name)
