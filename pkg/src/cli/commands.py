"""Command handlers: parsed arguments in, response model out.

Each handler parses its inputs through ``schemas``, calls the library and
wraps the result in a model from ``response_models``. Errors propagate to
``main`` which maps them to exit codes.
"""

from argparse import Namespace
from typing import Callable

from pydantic import BaseModel

from .response_models import (
    BirationalityModel,
    BMResponse,
    CokernelResponse,
    DiscElementModel,
    DiscFormModel,
    DiscResponse,
    DivisibilityResponse,
    ExtMukaiResponse,
    GlueResponse,
    HilbertResponse,
    K3LatticeResponse,
    LatticeInfoResponse,
    ModuliResponse,
    MukaiVectorModel,
    ShaResponse,
    SnfResponse,
    SublatticeResponse,
    SweepResponse,
    TorsorModel,
    TwistResponse,
    int_rows,
)
from .schemas import (
    MissingInputError,
    parse_bm_config,
    parse_lattice,
    parse_matrix,
    parse_model,
    parse_mukai_vector,
    parse_vector,
    require_inputs,
)
from ..k3 import beauville_mukai as bm
from ..k3.extended_mukai import delta_bookkeeping, derived_distinct
from ..k3.mukai import K3Model, MukaiVector, k3_moduli_lattice, moduli_report
from ..lattice.discform import discriminant_form
from ..lattice.errors import HypothesisError
from ..lattice.intlat import (
    Sublattice,
    divisibility,
    is_primitive,
    orthogonal_complement,
    signature,
)
from ..lattice.normal_form import snf
from ..lattice.oracles import cokernel_sweep, glue_check, glue_sweep, transcendental_cokernel
from ..utils.config import config
from ..utils.logger import get_logger

logger = get_logger(__name__)


def _vector_model(v: MukaiVector) -> MukaiVectorModel:
    return MukaiVectorModel(r=v.r, E=list(v.E), s=v.s)


def _torsor_model(t: bm.TorsorClass) -> TorsorModel:
    return TorsorModel(
        d=t.d,
        zeta_value=t.zeta_value,
        order=t.order,
        trivial=t.is_trivial,
        dual_divisor=list(t.dual_divisor) if t.dual_divisor is not None else None,
        representative=DiscElementModel.from_element(t.representative) if t.representative else None,
    )


def _require(args: Namespace, *names: str) -> None:
    require_inputs(**{n: getattr(args, n, None) for n in names})


# =============================================================================
# lat
# =============================================================================

def lat_info(args: Namespace) -> BaseModel:
    _require(args, "lattice")
    lattice = parse_lattice(args.lattice)
    return LatticeInfoResponse(
        label=lattice.label,
        rank=lattice.rank,
        gram=int_rows(lattice.gram),
        det=lattice.det,
        abs_det=abs(lattice.det),
        signature=list(signature(lattice)),
        unimodular=lattice.is_unimodular,
    )


def lat_snf(args: Namespace) -> BaseModel:
    if args.matrix is not None:
        matrix = parse_matrix(args.matrix)
    else:
        _require(args, "lattice")
        matrix = int_rows(parse_lattice(args.lattice).gram)
    dec = snf(matrix)
    return SnfResponse(d=list(dec.d), left=int_rows(dec.left), right=int_rows(dec.right))


def lat_disc(args: Namespace) -> BaseModel:
    _require(args, "lattice")
    lattice = parse_lattice(args.lattice)
    form = discriminant_form(lattice)
    return DiscResponse(label=lattice.label, form=DiscFormModel.from_form(form), trivial=form.is_trivial)


def _sublattice(args: Namespace) -> Sublattice:
    _require(args, "lattice", "sub")
    lattice = parse_lattice(args.lattice)
    return Sublattice.span(lattice, parse_matrix(args.sub))


def lat_comp(args: Namespace) -> BaseModel:
    sub = _sublattice(args)
    comp = orthogonal_complement(sub)
    return SublatticeResponse(
        report="lat_comp",
        input_basis=int_rows(sub.basis),
        basis=int_rows(comp.basis),
        rank=comp.rank,
        gram=int_rows(comp.gram_restricted),
        degenerate=sub.is_degenerate,
        notes=list(comp.notes),
    )


def lat_sat(args: Namespace) -> BaseModel:
    sub = _sublattice(args)
    sat = sub.saturated
    return SublatticeResponse(
        report="lat_sat",
        input_basis=int_rows(sub.basis),
        basis=int_rows(sat.basis),
        rank=sat.rank,
        gram=int_rows(sat.gram_restricted),
        index=sub.saturation_index,
        degenerate=sub.is_degenerate,
    )


def lat_div(args: Namespace) -> BaseModel:
    _require(args, "lattice", "v")
    lattice = parse_lattice(args.lattice)
    v = parse_vector(args.v)
    return DivisibilityResponse(
        vector=v,
        divisibility=divisibility(lattice, v),
        primitive=is_primitive(lattice, v),
        square=lattice.square(v),
    )


LAT_ACTIONS: dict[str, Callable[[Namespace], BaseModel]] = {
    "info": lat_info,
    "snf": lat_snf,
    "disc": lat_disc,
    "comp": lat_comp,
    "sat": lat_sat,
    "div": lat_div,
}


def run_lat(args: Namespace) -> BaseModel:
    response = LAT_ACTIONS[args.action](args)
    logger.info("lat %s completed", args.action)
    return response


# =============================================================================
# moduli
# =============================================================================

def _model_and_vector(args: Namespace) -> tuple[K3Model, MukaiVector]:
    _require(args, "model", "v")
    return parse_model(args.model), parse_mukai_vector(args.v)


def moduli_full(args: Namespace) -> BaseModel:
    model, v = _model_and_vector(args)
    r = moduli_report(model, v)
    return ModuliResponse(
        vector=_vector_model(v),
        v_square=r.v_square,
        nonempty=r.nonempty,
        existence=r.existence.kind.value,
        existence_reason=r.existence.reason,
        dimension=r.dimension,
        half_dimension=r.half_dimension,
        kind_label=r.kind_label,
        div_v=r.div_v,
        fine=r.fine,
        obstruction_order=r.obstruction_order,
        ses_kernel_order=r.ses_kernel_order,
        cokernel_index=r.cokernel_index,
        caldararu_class=DiscElementModel.from_element(r.caldararu_class),
        transcendental_caldararu=DiscElementModel.from_element(r.transcendental_caldararu),
        assumes_generic_polarisation=r.assumes_generic_polarisation,
        notes=r.notes,
    )


def moduli_hilbert(args: Namespace) -> BaseModel:
    model, v = _model_and_vector(args)
    h = bm.hilbert_scheme_criterion(model, v, args.bound)
    return HilbertResponse(
        vector=_vector_model(v),
        n=h.n,
        v_square=h.v_square,
        div_v=h.div_v,
        fine=h.fine,
        birational=h.birational,
        derived_equivalent=h.derived_equivalent,
        elliptic_witness=list(h.witness),
        hilbert_vector=_vector_model(h.hilbert_vector),
        existence=h.existence.kind.value,
        dimension=h.existence.dimension,
        notes=h.notes,
    )


def moduli_k3(args: Namespace) -> BaseModel:
    model, v = _model_and_vector(args)
    k = k3_moduli_lattice(model, v)
    return K3LatticeResponse(
        vector=_vector_model(v),
        ns_M_gram=int_rows(k.ns_M.gram),
        det_ns_S=k.det_ns_S,
        det_ns_M=k.det_ns_M,
        div_v=k.div_v,
        transcendental_index=k.transcendental_index,
    )


MODULI_ACTIONS: dict[str, Callable[[Namespace], BaseModel]] = {
    "report": moduli_full,
    "hilbert": moduli_hilbert,
    "k3": moduli_k3,
}


def run_moduli(args: Namespace) -> BaseModel:
    response = MODULI_ACTIONS[args.mode](args)
    logger.info("moduli %s completed", args.mode)
    return response


# =============================================================================
# bm
# =============================================================================

def _bm_config(args: Namespace) -> bm.BMConfig:
    if args.config is not None:
        return parse_bm_config(args.config)
    if args.g is not None:
        return bm.BMConfig.rank_one(args.g)
    raise MissingInputError("missing required input: --config or --g")


def _certificate_model(cert: bm.BirationalityCertificate) -> BirationalityModel:
    return BirationalityModel(
        birational=cert.birational,
        gcd_d=cert.gcd_d,
        gcd_e=cert.gcd_e,
        order_d=cert.order_d,
        order_e=cert.order_e,
        classes_equal=cert.classes_equal,
        orbit_equivalent=cert.orbit_equivalent,
        class_d=DiscElementModel.from_element(cert.class_d),
        class_e=DiscElementModel.from_element(cert.class_e),
        elliptic_witness=list(cert.witness),
    )


def _bm_response(args: Namespace, cfg: bm.BMConfig, report: str = "bm") -> BMResponse:
    d = args.d
    out = BMResponse(
        report=report,
        g=cfg.g,
        div_H=cfg.div_H,
        curve_assumption=cfg.curve_assumption,
        d=d,
        v_d=_vector_model(bm.v_d(cfg, d)),
        div_vd=bm.div_vd(cfg, d),
        sha_kernel_order=bm.sha_kernel_order(cfg, d),
        torsor=_torsor_model(bm.torsor_class(cfg, d, args.bound)),
    )
    if args.e is not None:
        e = args.e
        out.e = e
        out.v_e = _vector_model(bm.v_d(cfg, e))
        out.div_ve = bm.div_vd(cfg, e)
        out.torsor_equivalent = bm.torsor_equivalent(cfg, d, e)
        out.obstruction_image_exponent = bm.obstruction_image_exponent(cfg, d, e)
    return out


def bm_check(args: Namespace) -> BaseModel:
    """Torsor data for d (and e); the certificate only when U ⊂ NS is found."""
    _require(args, "d")
    cfg = _bm_config(args)
    out = _bm_response(args, cfg)
    if args.e is None:
        return out
    try:
        out.certificate = _certificate_model(bm.bm_birational(cfg, args.d, args.e, args.bound))
    except HypothesisError as exc:
        out.notes.append(f"birationality not decided: {exc}")
    return out


def bm_decide_birational(args: Namespace) -> BaseModel:
    """Like check, but a missing elliptic section is an error."""
    _require(args, "d", "e")
    cfg = _bm_config(args)
    cert = bm.bm_birational(cfg, args.d, args.e, args.bound)
    out = _bm_response(args, cfg, report="bm_birational")
    out.certificate = _certificate_model(cert)
    return out


def bm_sha(args: Namespace) -> BaseModel:
    _require(args, "d")
    cfg = _bm_config(args)
    generator = bm.sha_kernel_generator(cfg, args.d, args.bound)
    return ShaResponse(
        d=args.d,
        div_H=cfg.div_H,
        div_vd=bm.div_vd(cfg, args.d),
        kernel_order=bm.sha_kernel_order(cfg, args.d),
        generator=_torsor_model(generator),
    )


def bm_twist(args: Namespace) -> BaseModel:
    _require(args, "d", "e")
    cfg = _bm_config(args)
    t = bm.twisted_equivalence_exponents(cfg, args.d, args.e)
    return TwistResponse(
        d=t.d,
        e=t.e,
        exponent_on_d=t.exponent_on_d,
        modulus_d=t.modulus_d,
        exponent_on_e=t.exponent_on_e,
        modulus_e=t.modulus_e,
        applicable=t.applicable,
        note=t.note,
    )


BM_ACTIONS: dict[str, Callable[[Namespace], BaseModel]] = {
    "check": bm_check,
    "birational": bm_decide_birational,
    "sha": bm_sha,
    "twist": bm_twist,
}


def run_bm(args: Namespace) -> BaseModel:
    response = BM_ACTIONS[args.mode](args)
    logger.info("bm %s completed for d=%s e=%s", args.mode, args.d, args.e)
    return response


# =============================================================================
# extmukai
# =============================================================================

def run_extmukai(args: Namespace) -> BaseModel:
    _require(args, "g")
    r = derived_distinct(args.g)
    delta = delta_bookkeeping(args.g)
    logger.info("extmukai g=%d: %s", args.g, r.verdict)
    return ExtMukaiResponse(
        g=r.g,
        gram_M=int_rows(r.gram_M),
        gram_Mprime=int_rows(r.gram_Mprime),
        disc_M=r.disc_M,
        disc_Mprime=r.disc_Mprime,
        distinct=r.distinct,
        applicable=r.applicable,
        verdict=r.verdict,
        signature_M=list(r.signature_M),
        signature_Mprime=list(r.signature_Mprime),
        ns_Mprime_block=int_rows(r.ns_Mprime_block),
        delta_square=delta.delta_square,
        delta_divisibility=delta.delta_divisibility,
        generator_dot_beta=delta.generator_dot_beta,
    )


# =============================================================================
# verify
# =============================================================================

def _sweep_response(kind: str, frame, seed: int) -> SweepResponse:
    records = frame.to_dict(orient="records")
    rows = [{k: (v.item() if hasattr(v, "item") else v) for k, v in r.items()} for r in records]
    verified = int(frame["verified"].sum()) if len(frame) else 0
    return SweepResponse(
        report=kind,
        seed=seed,
        samples=len(rows),
        verified=verified,
        all_verified=verified == len(rows),
        rows=rows,
    )


def verify_glue(args: Namespace) -> BaseModel:
    seed = config.oracle.seed if args.seed is None else args.seed
    if args.random is not None:
        return _sweep_response("verify_glue_sweep", glue_sweep(args.random, seed), seed)
    sub = _sublattice(args)
    r = glue_check(sub.home, sub)
    return GlueResponse(
        sublattice=int_rows(r.sublattice.basis),
        complement=int_rows(r.complement.basis),
        form_n=DiscFormModel.from_form(r.form_n),
        form_t=DiscFormModel.from_form(r.form_t),
        images=[list(img.coeffs) for img in r.images],
        orders_equal=r.orders_equal,
        anti_isometric=r.anti_isometric,
        verified=r.verified,
    )


def verify_cokernel(args: Namespace) -> BaseModel:
    seed = config.oracle.seed if args.seed is None else args.seed
    if args.random is not None:
        return _sweep_response("verify_cokernel_sweep", cokernel_sweep(args.random, seed), seed)
    sub = _sublattice(args)
    _require(args, "v")
    r = transcendental_cokernel(sub.home, sub, parse_vector(args.v))
    return CokernelResponse(
        divisibility=r.divisibility,
        index=r.index,
        witness=r.witness,
        kernel_generator=r.kernel_generator,
        vector=r.vector,
        verified=r.verified,
    )


VERIFY_ACTIONS: dict[str, Callable[[Namespace], BaseModel]] = {
    "glue": verify_glue,
    "cokernel": verify_cokernel,
}


def run_verify(args: Namespace) -> BaseModel:
    response = VERIFY_ACTIONS[args.what](args)
    logger.info("verify %s completed", args.what)
    return response


__all__ = [
    "run_lat",
    "run_moduli",
    "run_bm",
    "run_extmukai",
    "run_verify",
]
