"""
Complement instances and the identity checks run against them.

An Instance fixes a quaternary space, a maximal lattice L and a vector h
with phi[h] = q != 0, and carries everything derived from the complement
W = h^perp. Each check_* function returns a CheckResult; a failed identity
is an outcome, never an exception.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import wraps
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple
import json
import logging
import random
import time

from src.quadlat.core import linalg
from src.quadlat.core.clifford import (
    CliffordAlg,
    CliffordElt,
    CliffordOrder,
    QuatStructure,
    conjugate_order,
    even_order,
    odd_part_coordinates,
    order_discriminant,
    order_dual,
    quaternionize,
    tau_conjugate,
    xi_map,
    xi_unmap,
)
from src.quadlat.core.exactnum import (
    INF,
    RatIdeal,
    SquareClass,
    hilbert_symbol,
    relevant_places,
    squarefree_split,
)
from src.quadlat.core.invariants import (
    DIVISION,
    SPLIT,
    QuatClass,
    b_ideal,
    cha_case,
    complement_index,
    discriminant_class,
    e_from_core_dims,
    e_ideal,
    quaternary_class,
    quaternary_disc_ideal,
    real_char_class,
    real_index,
    real_sign_condition,
    space_invariants,
    ternary_class,
    ternary_disc_ideal,
)
from src.quadlat.core.maximality import (
    discriminant_ideal,
    is_maximal,
    maximal_lattice,
    maximalize,
)
from src.quadlat.core.qspace import (
    Lattice,
    QuadSpace,
    Vector,
    as_vector,
    complement_basis,
    index_ideal,
    intersect_with_subspace,
    is_integral,
    pairing_ideal,
    scale,
)
from src.quadlat.utils.error_handlers import (
    NotASquare,
    NotIntegral,
    NotMaximal,
    QuadLatError,
    UnsupportedDimension,
)

logger = logging.getLogger(__name__)

CHECK_NAMES = (
    'theorem1',
    'lemma1',
    'lalw',
    'disc_formulas',
    'char_and_invariants',
    'equivariance',
)

H_SCALINGS = (2, 3)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one check: the compared values rendered as strings."""
    name: str
    passed: bool
    lhs: str
    rhs: str
    failures: Tuple[str, ...] = ()
    elapsed_ms: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'pass': self.passed,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'failures': list(self.failures),
            'elapsed_ms': round(self.elapsed_ms, 3),
        }


def render_lattice(lat: Lattice) -> str:
    return json.dumps([list(row) for row in lat.rows_as_strings()], separators=(',', ':'))


def render(value) -> str:
    if isinstance(value, Lattice):
        return render_lattice(value)
    if isinstance(value, QuatClass):
        return '{' + ','.join(str(v) for v in value.ram) + '}'
    return str(value)


class _Assertions:
    """Collects labelled comparisons for one check."""

    def __init__(self, name: str):
        self.name = name
        self.items: List[Tuple[str, bool, str, str]] = []

    def expect(self, label: str, lhs, rhs, ok: Optional[bool] = None) -> bool:
        ok = (lhs == rhs) if ok is None else bool(ok)
        self.items.append((label, ok, render(lhs), render(rhs)))
        if not ok:
            logger.warning(f"{self.name}: {label} failed: {render(lhs)} != {render(rhs)}")
        return ok

    def holds(self, label: str, condition: bool) -> bool:
        return self.expect(label, condition, True)

    def fail(self, label: str, message: str) -> None:
        self.items.append((label, False, message, ''))
        logger.warning(f"{self.name}: {label}: {message}")

    def result(self, elapsed_ms: float) -> CheckResult:
        failures = tuple(label for label, ok, _, _ in self.items if not ok)
        if len(self.items) == 1:
            _, _, lhs, rhs = self.items[0]
        else:
            lhs = '; '.join(f"{label}: {l}" for label, _, l, _ in self.items)
            rhs = '; '.join(f"{label}: {r}" for label, _, _, r in self.items)
        return CheckResult(
            name=self.name,
            passed=bool(self.items) and not failures,
            lhs=lhs,
            rhs=rhs,
            failures=failures,
            elapsed_ms=elapsed_ms,
        )


def _check(name: str) -> Callable:
    """
    Decorator for check bodies: times them and turns library errors raised
    mid-check into a failed result.
    """
    def decorator(body: Callable[..., None]) -> Callable[..., CheckResult]:
        @wraps(body)
        def run(*args, **kwargs) -> CheckResult:
            checks = _Assertions(name)
            started = time.perf_counter()
            try:
                body(checks, *args, **kwargs)
            except QuadLatError as e:
                checks.fail('error', f"{e.code}: {e.message}")
            elapsed = (time.perf_counter() - started) * 1000
            return checks.result(elapsed)
        return run
    return decorator


@dataclass(frozen=True)
class Instance:
    """The complement setting of a quaternary space and a vector h."""
    phi: QuadSpace
    lattice: Lattice
    h: Vector
    q: Fraction
    delta: SquareClass
    phi_class: QuatClass
    s_phi: int
    disc_l: RatIdeal
    w_basis: linalg.Matrix
    psi: QuadSpace
    lw: Lattice
    lw_ambient: Lattice
    m: Lattice
    disc_m: RatIdeal
    psi_class: QuatClass
    d_psi: RatIdeal
    quat: QuatStructure = field(repr=False)
    order: CliffordOrder = field(repr=False)
    a_ideal: RatIdeal
    r_ideal: RatIdeal
    c_ideal: RatIdeal
    index_m_lw: RatIdeal
    pairing: RatIdeal
    b: Optional[RatIdeal]


def build_instance(
    phi_gram: Sequence[Sequence],
    h: Sequence,
    lattice: Optional[Lattice] = None,
    max_rounds: Optional[int] = None
) -> Instance:
    """
    Derives the full complement setting.

    Raises:
        IsotropicVector: if phi[h] = 0
        NotIntegral / NotMaximal: if a supplied lattice is not maximal
        FactorBoundExceeded: if an ideal cannot be factored
    """
    phi = QuadSpace(phi_gram)
    if phi.n != 4:
        raise UnsupportedDimension(f"instances need a quaternary space (got n = {phi.n})")
    h = as_vector(h)
    w_basis, psi_gram = complement_basis(phi, h)
    q = phi.value(h)

    if lattice is None:
        lattice = maximal_lattice(phi)
    elif not is_maximal(lattice, phi):
        raise NotMaximal("supplied lattice is integral but not maximal")

    psi = QuadSpace(psi_gram)
    lw = intersect_with_subspace(lattice, w_basis)
    lw_ambient = lw.embed(w_basis)
    if not is_integral(lw, psi):
        raise NotIntegral("L cap W is not integral under psi")
    m = maximalize(lw, psi)

    quat = quaternionize(psi)
    order = even_order(lw, quat.host, max_rounds)

    psi_class = ternary_class(psi)
    d_psi = psi_class.discriminant()
    a_ideal, r_ideal = squarefree_split(quat.xi_norm)
    c_ideal = RatIdeal.from_factorization(
        {p: 1 for p in a_ideal.primes() if d_psi.valuation(p) == 0}
    )

    disc_l = discriminant_ideal(lattice, phi)
    disc_m = discriminant_ideal(m, psi)
    try:
        b = b_ideal(q, disc_l, disc_m)
    except NotASquare:
        b = None

    inst = Instance(
        phi=phi,
        lattice=lattice,
        h=h,
        q=q,
        delta=discriminant_class(phi),
        phi_class=quaternary_class(phi),
        s_phi=real_index(phi),
        disc_l=disc_l,
        w_basis=w_basis,
        psi=psi,
        lw=lw,
        lw_ambient=lw_ambient,
        m=m,
        disc_m=disc_m,
        psi_class=psi_class,
        d_psi=d_psi,
        quat=quat,
        order=order,
        a_ideal=a_ideal,
        r_ideal=r_ideal,
        c_ideal=c_ideal,
        index_m_lw=index_ideal(m, lw),
        pairing=pairing_ideal(h, lattice, phi),
        b=b,
    )
    logger.debug(
        f"instance built: q={q}, [L~/L]={disc_l}, [M~/M]={disc_m}, "
        f"xi xi*={quat.xi_norm}, D_psi={d_psi}"
    )
    return inst


def _odd_part_image(inst: Instance) -> Optional[Lattice]:
    rows = []
    for x in inst.lw.basis:
        coords = odd_part_coordinates(xi_map(x, inst.quat), inst.quat)
        if coords is None:
            return None
        rows.append(coords)
    return Lattice.from_generators(rows, dim=3)


@_check('theorem1')
def check_theorem1(checks: _Assertions, inst: Instance) -> None:
    """(L cap W) xi = r c D_psi [M/L cap W] (o~ cap A+(W)o)."""
    lhs = _odd_part_image(inst)
    if lhs is None:
        checks.fail('lattice', 'xi-image of L cap W leaves the trace-zero part')
        return
    odd_dual = intersect_with_subspace(order_dual(inst.order, inst.quat), inst.quat.odd_part_rows)
    factor = inst.r_ideal * inst.c_ideal * inst.d_psi * inst.index_m_lw
    checks.expect('lattice', lhs, scale(factor, odd_dual))

    # Replacing h by c h fixes W, L cap W and [M/L cap W]; 2 phi(h, L) and b(q) move by c.
    for c in H_SCALINGS:
        ch = tuple(c * x for x in inst.h)
        w_scaled, psi_scaled = complement_basis(inst.phi, ch)
        checks.expect(f'W(h*{c})', Lattice.from_generators(w_scaled),
                      Lattice.from_generators(inst.w_basis))
        lw_scaled = intersect_with_subspace(inst.lattice, w_scaled)
        checks.expect(f'L cap W(h*{c})', lw_scaled.embed(w_scaled), inst.lw_ambient)
        m_scaled = maximalize(lw_scaled, QuadSpace(psi_scaled))
        checks.expect(f'[M/L cap W](h*{c})', index_ideal(m_scaled, lw_scaled),
                      inst.index_m_lw)
        checks.expect(f'2phi(h*{c},L)', pairing_ideal(ch, inst.lattice, inst.phi),
                      RatIdeal.of(c) * inst.pairing)
        if inst.b is not None:
            checks.expect(f'b(q*{c * c})', b_ideal(c * c * inst.q, inst.disc_l, inst.disc_m),
                          RatIdeal.of(c) * inst.b)


@_check('lemma1')
def check_lemma1(checks: _Assertions, lat: Lattice, space: QuadSpace,
                 max_rounds: Optional[int] = None) -> None:
    """Even Clifford orders of N inside a maximal M."""
    if space.n != 3:
        raise UnsupportedDimension(
            f"even-order index relations need a ternary space (got n = {space.n})"
        )
    if not is_integral(lat, space):
        raise NotIntegral("N must be integral")
    m = maximalize(lat, space)
    quat = quaternionize(space)
    a_n = even_order(lat, quat.host, max_rounds)
    a_m = even_order(m, quat.host, max_rounds)
    n_even, m_even = a_n.even_lattice(), a_m.even_lattice()

    half = RatIdeal.of(Fraction(1, 2))
    disc_n = discriminant_ideal(lat, space)
    idx = index_ideal(m_even, n_even)
    dual_idx_n = index_ideal(order_dual(a_n, quat), n_even)
    dual_idx_m = index_ideal(order_dual(a_m, quat), m_even)

    checks.expect('[A+(M)/A+(N)] = [M/N]^2', idx, index_ideal(m, lat) ** 2)
    checks.expect('[A+(N)~/A+(N)] = (1/2 [N~/N])^2', dual_idx_n, (half * disc_n) ** 2)
    checks.expect('d(A+(N)) = 1/2 [N~/N]', order_discriminant(a_n, quat), half * disc_n)
    checks.expect('[A+(N)~/A+(N)] = [A+(M)/A+(N)]^2 [A+(M)~/A+(M)]',
                  dual_idx_n, idx ** 2 * dual_idx_m)
    checks.expect('d(A+(M)) = 1/2 [M~/M]', order_discriminant(a_m, quat),
                  half * discriminant_ideal(m, space))


def _a_plus_w_rows(av: CliffordAlg, h: Vector) -> linalg.Matrix:
    """Basis of A+(W) = {x in A+(V) : x h = h x} in A(V) coordinates."""
    h_elt = av.vector(h)
    evens = [av.basis_element(i) for i in av.even_indices]
    commutator = [(av.multiply(x, h_elt) - av.multiply(h_elt, x)).coeffs for x in evens]
    kernel = linalg.left_nullspace(commutator)
    even_rows = av.even_unit_rows()
    return tuple(linalg.vecmat(k, even_rows) for k in kernel)


@_check('lalw')
def check_lalw(checks: _Assertions, inst: Instance, max_rounds: Optional[int] = None) -> None:
    """A+(L cap W) = A+(L) cap A+(W) inside A(V)."""
    av = CliffordAlg(inst.phi)
    w_rows = _a_plus_w_rows(av, inst.h)
    checks.expect('dim A+(W)', len(w_rows), 4)
    a_plus_l = even_order(inst.lattice, av, max_rounds)
    lhs = even_order(inst.lw_ambient, av, max_rounds).module.in_basis(w_rows)
    rhs = intersect_with_subspace(a_plus_l.module, w_rows)
    checks.expect('A+(L cap W) = A+(L) cap A+(W)', lhs, rhs)


@_check('disc_formulas')
def check_disc_formulas(checks: _Assertions, inst: Instance,
                        max_rounds: Optional[int] = None) -> None:
    """The discriminant-ideal formulas of the complement setting."""
    q_ideal = RatIdeal.of(inst.q)
    two = RatIdeal.of(2)
    half = RatIdeal.of(Fraction(1, 2))
    d_o = order_discriminant(inst.order, inst.quat)
    disc_lw = discriminant_ideal(inst.lw, inst.psi)

    checks.expect('[L~/L] = D_K e^2', inst.disc_l,
                  quaternary_disc_ideal(inst.delta, inst.phi_class))
    checks.expect('[M~/M] = 2a^-1 D_psi^2 cap 2a', inst.disc_m,
                  ternary_disc_ideal(inst.delta, inst.q, inst.d_psi))
    if inst.b is None:
        checks.fail('b(q) is an ideal square root', '2q[L~/L]/[M~/M] is not a square')
        return
    checks.holds('b(q)^2 [M~/M] = 2q[L~/L]',
                 inst.b ** 2 * inst.disc_m == two * q_ideal * inst.disc_l)
    checks.expect('[M/L cap W] = b(q) (2phi(h,L))^-1', inst.index_m_lw, inst.b / inst.pairing)
    checks.expect('d(o) = q[L~/L](2phi(h,L))^-2', d_o,
                  q_ideal * inst.disc_l / inst.pairing ** 2)

    checks.expect('[(LW)~/LW] = [M/LW]^2 [M~/M]', disc_lw, inst.index_m_lw ** 2 * inst.disc_m)
    checks.expect('[(LW)~/LW] = 2q[L~/L](2phi(h,L))^-2', disc_lw,
                  two * q_ideal * inst.disc_l / inst.pairing ** 2)
    checks.expect('d(o) = 1/2 [(LW)~/LW]', d_o, half * disc_lw)
    checks.holds('D_psi | d(o)', inst.d_psi.divides(d_o))
    if d_o.is_squarefree():
        checks.holds('d(o) squarefree => L cap W maximal', is_maximal(inst.lw, inst.psi))
    checks.holds('b(q) in 2phi(h,L)', (inst.b / inst.pairing).is_integral())

    inv = space_invariants(inst.phi)
    checks.expect('e from core dimensions', e_from_core_dims(inv), e_ideal(inv))

    a_m = even_order(inst.m, inst.quat.host, max_rounds)
    checks.expect('d(A+(M)) = 1/2 [M~/M]', order_discriminant(a_m, inst.quat), half * inst.disc_m)


def _split_or_division(ram: Sequence, v) -> str:
    return DIVISION if v in ram else SPLIT


@_check('char_and_invariants')
def check_char_and_invariants(checks: _Assertions, inst: Instance) -> None:
    """Brauer relation, index relation and the splitting classifier."""
    delta = inst.delta.rep
    places = relevant_places(
        inst.psi_class.a, inst.psi_class.b, inst.phi_class.a, inst.phi_class.b, delta, inst.q
    )
    for v in places:
        relation = inst.psi_class.local_invariant(v) * hilbert_symbol(delta, inst.q, v)
        checks.expect(f'Q(phi)_{v}', inst.phi_class.local_invariant(v), relation)
        checks.expect(
            f'cha_{v}',
            cha_case(inst.delta, inst.q, inst.phi_class.ram, v, inst.s_phi),
            _split_or_division(inst.psi_class.ram, v),
        )
    checks.holds('ram(Q(phi)) even', len(inst.phi_class.ram) % 2 == 0)
    checks.holds('ram(Q(psi)) even', len(inst.psi_class.ram) % 2 == 0)
    s_psi = real_index(inst.psi)
    checks.expect('s(psi) = s(phi) - sign(q)', s_psi, complement_index(inst.s_phi, inst.q))
    checks.expect('delta(psi) = -delta q', discriminant_class(inst.psi),
                  SquareClass.of(-delta * inst.q))
    checks.holds('sign condition phi', real_sign_condition(inst.phi))
    checks.holds('sign condition psi', real_sign_condition(inst.psi))
    checks.expect('real class phi', real_char_class(inst.s_phi),
                  _split_or_division(inst.phi_class.ram, INF))
    checks.expect('real class psi', real_char_class(s_psi),
                  _split_or_division(inst.psi_class.ram, INF))
    checks.expect('Q(phi) via h', quaternary_class(inst.phi, inst.h), inst.phi_class)


def random_alpha(quat: QuatStructure, rng: random.Random, bound: int = 2) -> CliffordElt:
    """An even element with nonzero norm and small integer coordinates."""
    host = quat.host
    while True:
        alpha = host.from_even_coords([rng.randint(-bound, bound) for _ in range(4)])
        if host.norm(alpha) != 0:
            return alpha


@_check('equivariance')
def check_equivariance(checks: _Assertions, inst: Instance, alphas: Sequence[CliffordElt],
                       max_rounds: Optional[int] = None) -> None:
    """A+((L cap W) tau(alpha)) = alpha^-1 A+(L cap W) alpha for each alpha."""
    host = inst.quat.host
    for k, alpha in enumerate(alphas):
        moved = [
            xi_unmap(tau_conjugate(alpha, xi_map(x, inst.quat), host), inst.quat)
            for x in inst.lw.basis
        ]
        transported = Lattice.from_generators(moved, dim=3)
        if not checks.holds(f'alpha{k}: transported lattice integral',
                            is_integral(transported, inst.psi)):
            continue
        checks.expect(
            f'alpha{k}: A+(N tau) = alpha^-1 A+(N) alpha',
            even_order(transported, host, max_rounds).module,
            conjugate_order(inst.order, alpha).module,
        )


def demo_instance_data() -> Tuple[List[List[int]], List[int]]:
    """phi = I_4, h = e_4."""
    gram = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    return gram, [0, 0, 0, 1]
