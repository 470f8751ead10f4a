"""Finite groupoids as explicit morphism tables.

A FiniteGroupoid stores its objects, morphisms, composition table,
identities and inverses outright; nothing is lazy or presented by
generators.  That keeps every structural statement checkable by plain
enumeration: equivalences come with certificates, cardinality is an
exact rational, homotopy fiber products are materialized.

Sizes are capped (MAX_MORPHISMS) because every construction here is
meant to stay at desk scale.
"""

from fractions import Fraction

from .permgroups import PermGroup, identity_perm

MAX_MORPHISMS = 20000
MAX_COMPOSE_PAIRS = 2000000


class GroupoidSizeError(ValueError):
    """Raised when a construction would exceed the morphism cap."""


class ValidationError(ValueError):
    """Raised when explicit tables fail a groupoid or functor axiom."""


def label_key(label):
    """Total order on heterogeneous nested labels (ints, strings, tuples)."""
    if isinstance(label, tuple):
        return (2, tuple(label_key(x) for x in label))
    if isinstance(label, bool):
        return (0, (1 if label else 0,))
    if isinstance(label, int):
        return (0, (label,))
    return (1, (str(label),))


class FiniteGroupoid:
    """Explicit finite groupoid.

    objects: tuple of hashable labels.
    mor_src, mor_tgt: tuples of object indices.
    mor_labels: tuple of hashable labels, one per morphism.
    compose: dict (g, f) -> g_after_f on morphism indices, defined for
        exactly the composable pairs tgt(f) == src(g).
    identity_of: tuple, object index -> morphism index.
    inverse_of: tuple, morphism index -> morphism index.

    Instances are immutable by convention; all operations build new
    groupoids.
    """

    def __init__(self, objects, mor_src, mor_tgt, mor_labels, compose,
                 identity_of, inverse_of, validate=False):
        self.objects = tuple(objects)
        self.mor_src = tuple(mor_src)
        self.mor_tgt = tuple(mor_tgt)
        self.mor_labels = tuple(mor_labels)
        self.compose_table = dict(compose)
        self.identity_of = tuple(identity_of)
        self.inverse_of = tuple(inverse_of)
        if len(self.mor_labels) > MAX_MORPHISMS:
            raise GroupoidSizeError(
                "groupoid with %d morphisms exceeds the cap of %d"
                % (len(self.mor_labels), MAX_MORPHISMS))
        self._obj_index = {o: i for i, o in enumerate(self.objects)}
        self._mor_index = {m: i for i, m in enumerate(self.mor_labels)}
        assert len(self._obj_index) == len(self.objects), "duplicate objects"
        assert len(self._mor_index) == len(self.mor_labels), \
            "duplicate morphism labels"
        self._hom = None
        self._out = None
        self._iso = None
        if validate:
            self.validate()

    # -- basic accessors -------------------------------------------------

    @property
    def n_objects(self):
        return len(self.objects)

    @property
    def n_morphisms(self):
        return len(self.mor_labels)

    def obj_index(self, label):
        return self._obj_index[label]

    def mor_index(self, label):
        return self._mor_index[label]

    def compose(self, g, f):
        """Composite g after f (indices)."""
        return self.compose_table[(g, f)]

    def inv(self, m):
        return self.inverse_of[m]

    def id_of(self, obj_idx):
        return self.identity_of[obj_idx]

    def hom(self, s, t):
        """Tuple of morphism indices from object s to object t."""
        if self._hom is None:
            hom = {}
            for m in range(self.n_morphisms):
                hom.setdefault((self.mor_src[m], self.mor_tgt[m]),
                               []).append(m)
            self._hom = {k: tuple(v) for k, v in hom.items()}
        return self._hom.get((s, t), ())

    def out(self, obj_idx):
        """Tuple of morphism indices with source obj_idx."""
        if self._out is None:
            out = [[] for _ in range(self.n_objects)]
            for m in range(self.n_morphisms):
                out[self.mor_src[m]].append(m)
            self._out = [tuple(v) for v in out]
        return self._out[obj_idx]

    def __eq__(self, other):
        return (isinstance(other, FiniteGroupoid)
                and self.objects == other.objects
                and self.mor_labels == other.mor_labels
                and self.mor_src == other.mor_src
                and self.mor_tgt == other.mor_tgt
                and self.compose_table == other.compose_table
                and self.identity_of == other.identity_of
                and self.inverse_of == other.inverse_of)

    def __hash__(self):
        return hash((self.objects, self.mor_labels, self.mor_src,
                     self.mor_tgt))

    def __repr__(self):
        return "FiniteGroupoid(%d objects, %d morphisms)" % (
            self.n_objects, self.n_morphisms)

    # -- validation -------------------------------------------------------

    def validate(self):
        """Check every groupoid axiom by enumeration."""
        n, m = self.n_objects, self.n_morphisms
        assert len(self.mor_src) == m and len(self.mor_tgt) == m
        for i in range(m):
            if not (0 <= self.mor_src[i] < n and 0 <= self.mor_tgt[i] < n):
                raise ValidationError("morphism %d has bad endpoints" % i)
        if len(self.identity_of) != n:
            raise ValidationError("identity table has wrong length")
        for o in range(n):
            e = self.identity_of[o]
            if self.mor_src[e] != o or self.mor_tgt[e] != o:
                raise ValidationError("identity of object %r is not an "
                                      "endomorphism" % (self.objects[o],))
        # composition defined exactly on composable pairs
        npairs = 0
        for f in range(m):
            for g in self.hom_any_from(self.mor_tgt[f]):
                npairs += 1
        if len(self.compose_table) != npairs:
            raise ValidationError("composition table has %d entries, "
                                  "expected %d" % (len(self.compose_table),
                                                   npairs))
        for (g, f), h in self.compose_table.items():
            if self.mor_tgt[f] != self.mor_src[g]:
                raise ValidationError("composite of non-composable pair")
            if self.mor_src[h] != self.mor_src[f] or \
                    self.mor_tgt[h] != self.mor_tgt[g]:
                raise ValidationError("composite has wrong endpoints")
        # identities neutral
        for f in range(m):
            if self.compose(self.identity_of[self.mor_tgt[f]], f) != f:
                raise ValidationError("left identity fails at %d" % f)
            if self.compose(f, self.identity_of[self.mor_src[f]]) != f:
                raise ValidationError("right identity fails at %d" % f)
        # inverses
        for f in range(m):
            g = self.inverse_of[f]
            if self.compose(g, f) != self.identity_of[self.mor_src[f]]:
                raise ValidationError("inverse fails at %d" % f)
            if self.compose(f, g) != self.identity_of[self.mor_tgt[f]]:
                raise ValidationError("inverse fails at %d" % f)
        # associativity on all composable triples
        ntriples = 0
        for f in range(m):
            for g in self.hom_any_from(self.mor_tgt[f]):
                gf = self.compose(g, f)
                for h in self.hom_any_from(self.mor_tgt[g]):
                    ntriples += 1
                    if ntriples > MAX_COMPOSE_PAIRS:
                        raise GroupoidSizeError(
                            "associativity enumeration too large")
                    if self.compose(h, gf) != \
                            self.compose(self.compose(h, g), f):
                        raise ValidationError("associativity fails")
        return True

    def hom_any_from(self, obj_idx):
        return self.out(obj_idx)

    # -- invariants -------------------------------------------------------

    def iso_classes(self):
        if self._iso is None:
            self._iso = IsoClassDecomposition(self)
        return self._iso

    def cardinality(self):
        """Sum over iso classes of 1/|Aut(representative)|."""
        dec = self.iso_classes()
        total = Fraction(0)
        for rep in dec.representatives:
            total += Fraction(1, dec.aut_order[rep])
        return total

    def aut(self, obj_idx):
        return self.hom(obj_idx, obj_idx)


class IsoClassDecomposition:
    """Partition of objects by connectivity, with automorphism data.

    representatives are the least object (in canonical label order)
    of each class; classes are listed in that order.
    """

    def __init__(self, gpd):
        self.groupoid = gpd
        n = gpd.n_objects
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for m in range(gpd.n_morphisms):
            a, b = find(gpd.mor_src[m]), find(gpd.mor_tgt[m])
            if a != b:
                parent[a] = b
        groups = {}
        for o in range(n):
            groups.setdefault(find(o), []).append(o)
        classes = []
        for members in groups.values():
            members.sort(key=lambda o: label_key(gpd.objects[o]))
            classes.append(members)
        classes.sort(key=lambda ms: label_key(gpd.objects[ms[0]]))
        self.classes = [tuple(ms) for ms in classes]
        self.representatives = tuple(ms[0] for ms in self.classes)
        self.aut_order = {rep: len(gpd.hom(rep, rep))
                          for rep in self.representatives}
        self.class_of = [None] * n
        for ci, ms in enumerate(self.classes):
            for o in ms:
                self.class_of[o] = ci

    @property
    def n_classes(self):
        return len(self.classes)


class GroupoidFunctor:
    """A functor between finite groupoids, stored as index maps."""

    def __init__(self, source, target, obj_map, mor_map, validate=False):
        self.source = source
        self.target = target
        self.obj_map = tuple(obj_map)
        self.mor_map = tuple(mor_map)
        assert len(self.obj_map) == source.n_objects
        assert len(self.mor_map) == source.n_morphisms
        if validate:
            self.validate()

    @staticmethod
    def from_labels(source, target, obj_label_map, mor_label_map,
                    validate=True):
        obj_map = [target.obj_index(obj_label_map[o]) for o in source.objects]
        mor_map = [target.mor_index(mor_label_map[m])
                   for m in source.mor_labels]
        return GroupoidFunctor(source, target, obj_map, mor_map,
                               validate=validate)

    def on_obj(self, o):
        return self.obj_map[o]

    def on_mor(self, m):
        return self.mor_map[m]

    def __eq__(self, other):
        return (isinstance(other, GroupoidFunctor)
                and self.source == other.source
                and self.target == other.target
                and self.obj_map == other.obj_map
                and self.mor_map == other.mor_map)

    def __repr__(self):
        return "GroupoidFunctor(%r -> %r)" % (self.source, self.target)

    def validate(self):
        src, tgt = self.source, self.target
        for m in range(src.n_morphisms):
            fm = self.mor_map[m]
            if tgt.mor_src[fm] != self.obj_map[src.mor_src[m]] or \
                    tgt.mor_tgt[fm] != self.obj_map[src.mor_tgt[m]]:
                raise ValidationError("functor breaks endpoints at %r"
                                      % (src.mor_labels[m],))
        for o in range(src.n_objects):
            if self.mor_map[src.identity_of[o]] != \
                    tgt.identity_of[self.obj_map[o]]:
                raise ValidationError("functor breaks identity at %r"
                                      % (src.objects[o],))
        for (g, f), h in src.compose_table.items():
            if tgt.compose(self.mor_map[g], self.mor_map[f]) != \
                    self.mor_map[h]:
                raise ValidationError("functor breaks composition at "
                                      "(%r, %r)" % (src.mor_labels[g],
                                                    src.mor_labels[f]))
        return True


def identity_functor(gpd):
    return GroupoidFunctor(gpd, gpd, range(gpd.n_objects),
                           range(gpd.n_morphisms))


def compose_functors(g, f):
    """g after f."""
    assert f.target == g.source, "functor composition mismatch"
    return GroupoidFunctor(f.source, g.target,
                           [g.obj_map[o] for o in f.obj_map],
                           [g.mor_map[m] for m in f.mor_map])


# -- constructors ---------------------------------------------------------

def _table_from_parts(objects, mors, compose_fn, identity_fn, inverse_fn,
                      validate=False):
    """mors: list of (label, src_idx, tgt_idx)."""
    mor_labels = [m[0] for m in mors]
    mor_src = [m[1] for m in mors]
    mor_tgt = [m[2] for m in mors]
    index = {lbl: i for i, lbl in enumerate(mor_labels)}
    compose = {}
    by_src = {}
    for i in range(len(mors)):
        by_src.setdefault(mor_src[i], []).append(i)
    npairs = 0
    for f in range(len(mors)):
        for g in by_src.get(mor_tgt[f], ()):
            npairs += 1
            if npairs > MAX_COMPOSE_PAIRS:
                raise GroupoidSizeError("composition table too large")
    for f in range(len(mors)):
        for g in by_src.get(mor_tgt[f], ()):
            compose[(g, f)] = index[compose_fn(mor_labels[g], mor_labels[f])]
    identity_of = [index[identity_fn(o)] for o in objects]
    inverse_of = [index[inverse_fn(lbl)] for lbl in mor_labels]
    return FiniteGroupoid(objects, mor_src, mor_tgt, mor_labels, compose,
                          identity_of, inverse_of, validate=validate)


def make_discrete(n_or_labels):
    """Discrete groupoid: only identity morphisms."""
    if isinstance(n_or_labels, int):
        assert n_or_labels >= 0
        objects = tuple(range(n_or_labels))
    else:
        objects = tuple(n_or_labels)
    mors = [(("id", o), i, i) for i, o in enumerate(objects)]
    return _table_from_parts(
        objects, mors,
        compose_fn=lambda g, f: f,
        identity_fn=lambda o: ("id", o),
        inverse_fn=lambda lbl: lbl)


def point_groupoid():
    """The monoidal unit: one object, one morphism."""
    return make_discrete(("pt",))


def make_action_groupoid(group, points=None, gen_images=None):
    """Action groupoid X//G for a permutation group acting on points.

    Objects are the points; a morphism (x, g) runs from x to g.x.
    Composition is (g.x, h) o (x, g) = (x, hg).  With gen_images the
    action is the homomorphic extension of the generator assignment
    (so non-faithful actions are fine); otherwise the natural action
    restricted to the given points is used.
    """
    if points is None:
        points = list(range(group.degree))
    points = list(points)
    action = group.action_on(points, gen_images)
    objects = tuple(range(len(points)))
    mors = []
    for x in objects:
        for g in group.elements:
            mors.append(((x, g), x, action[g][x]))
    if len(mors) > MAX_MORPHISMS:
        raise GroupoidSizeError("action groupoid with %d morphisms exceeds "
                                "the cap" % len(mors))

    e = group.identity()

    def compose_fn(glbl, flbl):
        (x, g) = flbl
        (y, h) = glbl
        assert y == action[g][x]
        return (x, group.multiply(h, g))

    def inverse_fn(lbl):
        (x, g) = lbl
        return (action[g][x], group.inverse(g))

    gpd = _table_from_parts(
        objects, mors,
        compose_fn=compose_fn,
        identity_fn=lambda o: (o, e),
        inverse_fn=inverse_fn)
    return gpd


def classifying_groupoid(group):
    """BG: one object, morphisms the group elements."""
    trivial = [identity_perm(1)] * len(group.generators)
    return make_action_groupoid(group, points=[0], gen_images=trivial)


def product_groupoid(a, b):
    """Product groupoid with pair objects and pair morphisms."""
    nm = a.n_morphisms * b.n_morphisms
    if nm > MAX_MORPHISMS:
        raise GroupoidSizeError("product with %d morphisms exceeds the cap"
                                % nm)
    objects = tuple((x, y) for x in a.objects for y in b.objects)
    obj_of = {(i, j): k for k, (i, j) in enumerate(
        (i, j) for i in range(a.n_objects) for j in range(b.n_objects))}
    mors = []
    for i in range(a.n_morphisms):
        for j in range(b.n_morphisms):
            mors.append(((a.mor_labels[i], b.mor_labels[j]),
                         obj_of[(a.mor_src[i], b.mor_src[j])],
                         obj_of[(a.mor_tgt[i], b.mor_tgt[j])]))
    ia, ib = {m: i for i, m in enumerate(a.mor_labels)}, \
             {m: i for i, m in enumerate(b.mor_labels)}

    def compose_fn(glbl, flbl):
        g1, g2 = ia[glbl[0]], ib[glbl[1]]
        f1, f2 = ia[flbl[0]], ib[flbl[1]]
        return (a.mor_labels[a.compose(g1, f1)],
                b.mor_labels[b.compose(g2, f2)])

    return _table_from_parts(
        objects, mors,
        compose_fn=compose_fn,
        identity_fn=lambda o: (
            a.mor_labels[a.identity_of[a.obj_index(o[0])]],
            b.mor_labels[b.identity_of[b.obj_index(o[1])]]),
        inverse_fn=lambda lbl: (a.mor_labels[a.inv(ia[lbl[0]])],
                                b.mor_labels[b.inv(ib[lbl[1]])]))


def disjoint_union(a, b):
    objects = tuple((0, o) for o in a.objects) + \
        tuple((1, o) for o in b.objects)
    mors = []
    for i in range(a.n_morphisms):
        mors.append(((0, a.mor_labels[i]), a.mor_src[i], a.mor_tgt[i]))
    off = a.n_objects
    for i in range(b.n_morphisms):
        mors.append(((1, b.mor_labels[i]), b.mor_src[i] + off,
                     b.mor_tgt[i] + off))

    def compose_fn(glbl, flbl):
        side, g = glbl
        _, f = flbl
        gpd = a if side == 0 else b
        return (side, gpd.mor_labels[gpd.compose(gpd.mor_index(g),
                                                 gpd.mor_index(f))])

    def identity_fn(o):
        side, lbl = o
        gpd = a if side == 0 else b
        return (side, gpd.mor_labels[gpd.identity_of[gpd.obj_index(lbl)]])

    def inverse_fn(m):
        side, lbl = m
        gpd = a if side == 0 else b
        return (side, gpd.mor_labels[gpd.inv(gpd.mor_index(lbl))])

    return _table_from_parts(objects, mors, compose_fn, identity_fn,
                             inverse_fn)


# -- functor constructors -------------------------------------------------

def terminal_functor(gpd, pt=None):
    pt = pt or point_groupoid()
    return GroupoidFunctor(gpd, pt, [0] * gpd.n_objects,
                           [0] * gpd.n_morphisms)


def diagonal_functor(gpd, prod=None):
    """X -> X x X."""
    prod = prod or product_groupoid(gpd, gpd)
    obj_map = [prod.obj_index((o, o)) for o in gpd.objects]
    mor_map = [prod.mor_index((m, m)) for m in gpd.mor_labels]
    return GroupoidFunctor(gpd, prod, obj_map, mor_map)


def pair_functor(f, g, prod=None):
    """(f, g): A -> X x Y for functors f: A -> X, g: A -> Y."""
    assert f.source == g.source
    prod = prod or product_groupoid(f.target, g.target)
    obj_map = [prod.obj_index((f.target.objects[f.obj_map[o]],
                               g.target.objects[g.obj_map[o]]))
               for o in range(f.source.n_objects)]
    mor_map = [prod.mor_index((f.target.mor_labels[f.mor_map[m]],
                               g.target.mor_labels[g.mor_map[m]]))
               for m in range(f.source.n_morphisms)]
    return GroupoidFunctor(f.source, prod, obj_map, mor_map)


def product_functor(f, g, src_prod=None, tgt_prod=None):
    """f x g: A x B -> X x Y."""
    src_prod = src_prod or product_groupoid(f.source, g.source)
    tgt_prod = tgt_prod or product_groupoid(f.target, g.target)
    obj_map = []
    for (oa, ob) in src_prod.objects:
        obj_map.append(tgt_prod.obj_index(
            (f.target.objects[f.obj_map[f.source.obj_index(oa)]],
             g.target.objects[g.obj_map[g.source.obj_index(ob)]])))
    mor_map = []
    for (ma, mb) in src_prod.mor_labels:
        mor_map.append(tgt_prod.mor_index(
            (f.target.mor_labels[f.mor_map[f.source.mor_index(ma)]],
             g.target.mor_labels[g.mor_map[g.source.mor_index(mb)]])))
    return GroupoidFunctor(src_prod, tgt_prod, obj_map, mor_map)


# -- homotopy fiber product, inertia, fixed points ------------------------

def homotopy_fiber_product(f, g):
    """Homotopy fiber product of f: X -> Z <- Y : g.

    Objects are triples (x, y, phi) with phi: f(x) -> g(y) in Z.
    A morphism (a, b): (x, y, phi) -> (x', y', phi') is a pair with
    phi' o f(a) = g(b) o phi; equivalently phi' = g(b) phi f(a)^{-1},
    so morphisms out of an object are exactly the pairs (a, b).
    Returns (P, proj_X, proj_Y).
    """
    assert f.target == g.target, "fiber product needs a common base"
    X, Y, Z = f.source, g.source, f.target
    objects = []
    obj_data = []  # (x, y, phi) as indices
    for x in range(X.n_objects):
        fx = f.obj_map[x]
        for y in range(Y.n_objects):
            gy = g.obj_map[y]
            for phi in Z.hom(fx, gy):
                objects.append((X.objects[x], Y.objects[y],
                                Z.mor_labels[phi]))
                obj_data.append((x, y, phi))
    n_mor = 0
    for (x, y, phi) in obj_data:
        n_mor += len(X.out(x)) * len(Y.out(y))
    if n_mor > MAX_MORPHISMS:
        raise GroupoidSizeError(
            "homotopy fiber product with %d morphisms exceeds the cap of %d"
            % (n_mor, MAX_MORPHISMS))
    obj_of = {d: i for i, d in enumerate(obj_data)}
    mors = []
    mor_data = []
    for oi, (x, y, phi) in enumerate(obj_data):
        for a in X.out(x):
            fa = f.mor_map[a]
            for b in Y.out(y):
                gb = g.mor_map[b]
                phi2 = Z.compose(Z.compose(gb, phi), Z.inv(fa))
                tgt = obj_of[(X.mor_tgt[a], Y.mor_tgt[b], phi2)]
                mors.append(((objects[oi], X.mor_labels[a], Y.mor_labels[b]),
                             oi, tgt))
                mor_data.append((oi, a, b))
    mor_of = {d: i for i, d in enumerate(mor_data)}

    src_list = [m[1] for m in mors]
    tgt_list = [m[2] for m in mors]
    labels = [m[0] for m in mors]
    compose = {}
    by_src = {}
    for i, (oi, a, b) in enumerate(mor_data):
        by_src.setdefault(oi, []).append(i)
    for fi, (oi, a, b) in enumerate(mor_data):
        for gi in by_src.get(tgt_list[fi], ()):
            (_, a2, b2) = mor_data[gi]
            compose[(gi, fi)] = mor_of[(oi, X.compose(a2, a),
                                        Y.compose(b2, b))]
    identity_of = [mor_of[(oi, X.identity_of[x], Y.identity_of[y])]
                   for oi, (x, y, phi) in enumerate(obj_data)]
    inverse_of = [mor_of[(tgt_list[i], X.inv(a), Y.inv(b))]
                  for i, (oi, a, b) in enumerate(mor_data)]
    P = FiniteGroupoid(objects, src_list, tgt_list, labels, compose,
                       identity_of, inverse_of)
    proj_x = GroupoidFunctor(P, X, [d[0] for d in obj_data],
                             [d[1] for d in mor_data])
    proj_y = GroupoidFunctor(P, Y, [d[1] for d in obj_data],
                             [d[2] for d in mor_data])
    return P, proj_x, proj_y


def inertia(gpd):
    """Inertia groupoid: pairs (x, loop at x), morphisms conjugate.

    Returns (LX, projection to X).
    """
    X = gpd
    obj_data = []
    objects = []
    for x in range(X.n_objects):
        for gamma in X.aut(x):
            obj_data.append((x, gamma))
            objects.append((X.objects[x], X.mor_labels[gamma]))
    n_mor = sum(len(X.out(x)) for (x, gamma) in obj_data)
    if n_mor > MAX_MORPHISMS:
        raise GroupoidSizeError("inertia groupoid with %d morphisms exceeds "
                                "the cap" % n_mor)
    obj_of = {d: i for i, d in enumerate(obj_data)}
    mors = []
    mor_data = []
    for oi, (x, gamma) in enumerate(obj_data):
        for a in X.out(x):
            gamma2 = X.compose(X.compose(a, gamma), X.inv(a))
            tgt = obj_of[(X.mor_tgt[a], gamma2)]
            mors.append(((objects[oi], X.mor_labels[a]), oi, tgt))
            mor_data.append((oi, a))
    mor_of = {d: i for i, d in enumerate(mor_data)}
    labels = [m[0] for m in mors]
    src_list = [m[1] for m in mors]
    tgt_list = [m[2] for m in mors]
    compose = {}
    by_src = {}
    for i, (oi, a) in enumerate(mor_data):
        by_src.setdefault(oi, []).append(i)
    for fi, (oi, a) in enumerate(mor_data):
        for gi in by_src.get(tgt_list[fi], ()):
            a2 = mor_data[gi][1]
            compose[(gi, fi)] = mor_of[(oi, X.compose(a2, a))]
    identity_of = [mor_of[(oi, X.identity_of[x])]
                   for oi, (x, gamma) in enumerate(obj_data)]
    inverse_of = [mor_of[(tgt_list[i], X.inv(a))]
                  for i, (oi, a) in enumerate(mor_data)]
    L = FiniteGroupoid(objects, src_list, tgt_list, labels, compose,
                       identity_of, inverse_of)
    proj = GroupoidFunctor(L, X, [d[0] for d in obj_data],
                           [d[1] for d in mor_data])
    return L, proj


def loop_functor(f, LX=None, LY=None):
    """The evident map on inertia groupoids, (x, g) -> (f x, f g)."""
    X, Y = f.source, f.target
    LX = LX or inertia(X)[0]
    LY = LY or inertia(Y)[0]
    obj_map = []
    for (xl, gl) in LX.objects:
        x = X.obj_index(xl)
        g = X.mor_index(gl)
        obj_map.append(LY.obj_index((Y.objects[f.obj_map[x]],
                                     Y.mor_labels[f.mor_map[g]])))
    mor_map = []
    for (ol, al) in LX.mor_labels:
        (xl, gl) = ol
        x = X.obj_index(xl)
        g = X.mor_index(gl)
        a = X.mor_index(al)
        tgt_obj = (Y.objects[f.obj_map[x]], Y.mor_labels[f.mor_map[g]])
        mor_map.append(LY.mor_index((tgt_obj, Y.mor_labels[f.mor_map[a]])))
    return GroupoidFunctor(LX, LY, obj_map, mor_map)


def fixed_groupoid(f):
    """Homotopy fixed points of an endofunctor.

    Objects are pairs (x, phi: f(x) -> x); morphisms a with
    phi' = a phi f(a)^{-1}.
    """
    assert f.source == f.target, "fixed points need an endofunctor"
    X = f.source
    obj_data = []
    objects = []
    for x in range(X.n_objects):
        for phi in X.hom(f.obj_map[x], x):
            obj_data.append((x, phi))
            objects.append((X.objects[x], X.mor_labels[phi]))
    n_mor = sum(len(X.out(x)) for (x, phi) in obj_data)
    if n_mor > MAX_MORPHISMS:
        raise GroupoidSizeError("fixed groupoid with %d morphisms exceeds "
                                "the cap" % n_mor)
    obj_of = {d: i for i, d in enumerate(obj_data)}
    mors = []
    mor_data = []
    for oi, (x, phi) in enumerate(obj_data):
        for a in X.out(x):
            phi2 = X.compose(X.compose(a, phi), X.inv(f.mor_map[a]))
            tgt = obj_of[(X.mor_tgt[a], phi2)]
            mors.append(((objects[oi], X.mor_labels[a]), oi, tgt))
            mor_data.append((oi, a))
    mor_of = {d: i for i, d in enumerate(mor_data)}
    labels = [m[0] for m in mors]
    src_list = [m[1] for m in mors]
    tgt_list = [m[2] for m in mors]
    compose = {}
    by_src = {}
    for i, (oi, a) in enumerate(mor_data):
        by_src.setdefault(oi, []).append(i)
    for fi, (oi, a) in enumerate(mor_data):
        for gi in by_src.get(tgt_list[fi], ()):
            a2 = mor_data[gi][1]
            compose[(gi, fi)] = mor_of[(oi, X.compose(a2, a))]
    identity_of = [mor_of[(oi, X.identity_of[x])]
                   for oi, (x, phi) in enumerate(obj_data)]
    inverse_of = [mor_of[(tgt_list[i], X.inv(a))]
                  for i, (oi, a) in enumerate(mor_data)]
    return FiniteGroupoid(objects, src_list, tgt_list, labels, compose,
                          identity_of, inverse_of)


# -- equivalence machinery ------------------------------------------------

class EquivalenceReport:
    """Outcome of check_equivalence, with a certificate either way.

    ok: bool.  On success `witness` maps each target component
    representative to a source object hitting that component.  On
    failure `reason` explains and `detail` localizes it.
    """

    def __init__(self, ok, witness=None, reason=None, detail=None):
        self.ok = ok
        self.witness = witness
        self.reason = reason
        self.detail = detail

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "EquivalenceReport(ok)"
        return "EquivalenceReport(fail: %s %r)" % (self.reason, self.detail)


def check_equivalence(f):
    """Decide whether a functor is an equivalence, with certificate.

    Essential surjectivity and full faithfulness are both checked by
    enumeration.  Full faithfulness reduces, for groupoids, to: the
    functor is injective on components and bijective on automorphism
    groups of component representatives.
    """
    src, tgt = f.source, f.target
    sdec = src.iso_classes()
    tdec = tgt.iso_classes()
    # essential surjectivity and component injectivity
    hit = {}
    for ci, rep in enumerate(sdec.representatives):
        timg = tdec.class_of[f.obj_map[rep]]
        if timg in hit:
            return EquivalenceReport(
                False, reason="not faithful on components",
                detail=(src.objects[hit[timg]], src.objects[rep]))
        hit[timg] = rep
    missing = [tdec.representatives[ci] for ci in range(tdec.n_classes)
               if ci not in hit]
    if missing:
        return EquivalenceReport(
            False, reason="not essentially surjective",
            detail=tgt.objects[missing[0]])
    # bijective on automorphisms of representatives
    for rep in sdec.representatives:
        auts = src.aut(rep)
        images = {f.mor_map[m] for m in auts}
        target_auts = tgt.aut(f.obj_map[rep])
        if len(images) != len(auts) or len(auts) != len(target_auts):
            return EquivalenceReport(
                False, reason="hom-set not bijective",
                detail=(src.objects[rep], src.objects[rep]))
    witness = {tgt.objects[tdec.representatives[ci]]: src.objects[o]
               for ci, o in hit.items()}
    return EquivalenceReport(True, witness=witness)


def natural_isomorphism(f, g):
    """A natural isomorphism f => g, or None.

    f, g: functors with the same source and target.  The components
    are found by propagation along a spanning tree of each source
    component and verified on every morphism, so the certificate is
    complete.  Returns a tuple eta with eta[o] a target morphism index
    f(o) -> g(o), or None when no natural isomorphism exists.
    """
    assert f.source == g.source and f.target == g.target
    src, tgt = f.source, f.target
    dec = src.iso_classes()
    eta = [None] * src.n_objects
    for members in dec.classes:
        rep = members[0]
        # spanning tree from rep
        tree = {rep: None}
        order = [rep]
        frontier = [rep]
        while frontier:
            nxt = []
            for o in frontier:
                for m in src.out(o):
                    t = src.mor_tgt[m]
                    if t not in tree:
                        tree[t] = m
                        order.append(t)
                        nxt.append(t)
            frontier = nxt
        component_mors = [m for o in members for m in src.out(o)]
        found = False
        for cand in tgt.hom(f.obj_map[rep], g.obj_map[rep]):
            local = {rep: cand}
            for o in order[1:]:
                m = tree[o]
                s = src.mor_src[m]
                local[o] = tgt.compose(
                    tgt.compose(g.mor_map[m], local[s]),
                    tgt.inv(f.mor_map[m]))
            ok = True
            for m in component_mors:
                s, t = src.mor_src[m], src.mor_tgt[m]
                if tgt.compose(local[t], f.mor_map[m]) != \
                        tgt.compose(g.mor_map[m], local[s]):
                    ok = False
                    break
            if ok:
                for o, v in local.items():
                    eta[o] = v
                found = True
                break
        if not found:
            return None
    return tuple(eta)


def quasi_inverse(f):
    """A quasi-inverse of an equivalence, built from certificates.

    Returns (g, eta) where g: target -> source and eta[t] is a target
    morphism f(g(t)) -> t exhibiting the counit isomorphism.
    """
    rep = check_equivalence(f)
    assert rep.ok, "quasi_inverse of a non-equivalence"
    src, tgt = f.source, f.target
    tdec = tgt.iso_classes()
    # for each target object pick a source object and a connecting iso
    back_obj = [None] * tgt.n_objects
    counit = [None] * tgt.n_objects
    for ci, members in enumerate(tdec.classes):
        trep = tdec.representatives[ci]
        s0 = src.obj_index(rep.witness[tgt.objects[trep]])
        # path from f(s0) to each member of the class
        start = f.obj_map[s0]
        paths = {start: tgt.identity_of[start]}
        frontier = [start]
        while frontier:
            nxt = []
            for o in frontier:
                for m in tgt.out(o):
                    t = tgt.mor_tgt[m]
                    if t not in paths:
                        paths[t] = tgt.compose(m, paths[o])
                        nxt.append(t)
            frontier = nxt
        for t in members:
            back_obj[t] = s0
            counit[t] = paths[t]  # f(g(t)) = f(s0) -> t
    # morphisms: g(m) is the unique source morphism with
    # f(g(m)) = counit[t']^# m  (conjugated back)
    hom_lookup = {}
    for s in range(src.n_morphisms):
        hom_lookup[(src.mor_src[s], src.mor_tgt[s], f.mor_map[s])] = s
    back_mor = [None] * tgt.n_morphisms
    for m in range(tgt.n_morphisms):
        t0, t1 = tgt.mor_src[m], tgt.mor_tgt[m]
        s0, s1 = back_obj[t0], back_obj[t1]
        conj = tgt.compose(tgt.compose(tgt.inv(counit[t1]), m), counit[t0])
        key = (s0, s1, conj)
        s = hom_lookup.get(key)
        assert s is not None, "quasi-inverse lookup failed"
        back_mor[m] = s
    g = GroupoidFunctor(tgt, src, back_obj, back_mor)
    return g, tuple(counit)


def groups_isomorphic(table_a, table_b):
    """Brute-force isomorphism test for groups given by Cayley tables.

    Tables are dicts (i, j) -> k on range(n).  Backtracking over
    generator images; intended for orders up to a few dozen.
    """
    n = max((k[0] for k in table_a), default=-1) + 1
    m = max((k[0] for k in table_b), default=-1) + 1
    if n != m:
        return False
    if n == 0:
        return True

    def element_order(table, x, e):
        k, y = 1, x
        while y != e:
            y = table[(x, y)]
            k += 1
        return k

    def identity_of(table, n):
        for e in range(n):
            if all(table[(e, x)] == x and table[(x, e)] == x
                   for x in range(n)):
                return e
        raise AssertionError("no identity in table")

    ea, eb = identity_of(table_a, n), identity_of(table_b, n)
    orders_a = [element_order(table_a, x, ea) for x in range(n)]
    orders_b = [element_order(table_b, x, eb) for x in range(n)]
    if sorted(orders_a) != sorted(orders_b):
        return False

    # find a small generating set of A
    gens = []
    generated = {ea}
    for x in sorted(range(n), key=lambda i: -orders_a[i]):
        if x in generated:
            continue
        gens.append(x)
        frontier = list(generated | {x})
        closure = set(frontier)
        changed = True
        while changed:
            changed = False
            for p in list(closure):
                for q in list(closure):
                    r = table_a[(p, q)]
                    if r not in closure:
                        closure.add(r)
                        changed = True
        generated = closure
        if len(generated) == n:
            break

    candidates = [[y for y in range(n) if orders_b[y] == orders_a[g]]
                  for g in gens]

    def extend(mapping):
        """Close mapping under products; return updated dict or None."""
        mapping = dict(mapping)
        changed = True
        while changed:
            changed = False
            items = list(mapping.items())
            for (x1, y1) in items:
                for (x2, y2) in items:
                    x3 = table_a[(x1, x2)]
                    y3 = table_b[(y1, y2)]
                    if x3 in mapping:
                        if mapping[x3] != y3:
                            return None
                    else:
                        mapping[x3] = y3
                        changed = True
        return mapping

    def backtrack(i, mapping):
        if i == len(gens):
            return len(mapping) == n and \
                len(set(mapping.values())) == n
        for y in candidates[i]:
            trial = extend({**mapping, gens[i]: y})
            if trial is not None and backtrack(i + 1, trial):
                return True
        return False

    return backtrack(0, {ea: eb})


def aut_table(gpd, obj_idx):
    """Cayley table of Aut(obj) as a dict on range(k)."""
    auts = list(gpd.aut(obj_idx))
    pos = {m: i for i, m in enumerate(auts)}
    return {(pos[g], pos[f]): pos[gpd.compose(g, f)]
            for g in auts for f in auts}


def groupoids_equivalent_invariant(a, b):
    """Equivalence test by the complete invariant, no functor needed.

    Compares the multisets over components of (automorphism group
    order, isomorphism type of the automorphism group).
    """
    da, db = a.iso_classes(), b.iso_classes()
    if da.n_classes != db.n_classes:
        return False
    reps_a = sorted(da.representatives, key=lambda r: da.aut_order[r])
    reps_b = sorted(db.representatives, key=lambda r: db.aut_order[r])
    if [da.aut_order[r] for r in reps_a] != \
            [db.aut_order[r] for r in reps_b]:
        return False
    used = set()
    for ra in reps_a:
        ta = aut_table(a, ra)
        found = None
        for j, rb in enumerate(reps_b):
            if j in used or db.aut_order[rb] != da.aut_order[ra]:
                continue
            if groups_isomorphic(ta, aut_table(b, rb)):
                found = j
                break
        if found is None:
            return False
        used.add(found)
    return True
