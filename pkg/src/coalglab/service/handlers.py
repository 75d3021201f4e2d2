"""Command handlers shared by the HTTP service and the command-line client.

Each handler consumes validated payload models, runs the corresponding core
operation, and produces a Report.  Domain failures raise CoalglabError
subclasses; the HTTP layer maps them to error responses and the CLI to
nonzero exit codes.
"""
from __future__ import annotations

from .. import __version__
from ..chainmod import (
    diagonalize,
    mat_eq_at_precision,
    mat_is_identity,
    mat_mul,
    split_certificate,
    torsion_part,
)
from ..coalg import (
    coideal_perp,
    coradical_filtration,
    dual_algebra,
    enumerate_basis_ideals,
    ideal_perp,
    is_chain,
    validate_coalgebra,
)
from ..constructors import construct
from ..isomo import CoalgebraIso, recognize_kn
from ..serialize import (
    coalgebra_from_json,
    coalgebra_to_json,
    field_from_json,
    presentation_from_json,
)
from .schemas import (
    CoalgebraPayload,
    CoalgebraRequest,
    ConstructRequest,
    Report,
    SplitRequest,
)


def _coalgebra(payload: CoalgebraPayload):
    return coalgebra_from_json(payload.as_file_dict())


def _field_tag_to_json(tag):
    return tag if tag == "Q" else {"GF": tag.GF}


def handle_construct(request: ConstructRequest) -> CoalgebraPayload:
    fld = field_from_json(_field_tag_to_json(request.field))
    built = construct(request.kind, request.n, fld)
    return CoalgebraPayload.model_validate(coalgebra_to_json(built))


def handle_validate(request: CoalgebraRequest) -> Report:
    c = _coalgebra(request.coalgebra)
    report = validate_coalgebra(c)
    details = {
        "dim": c.dim,
        "violations": [
            {"kind": v.kind, "indices": list(v.indices), "lhs": v.lhs, "rhs": v.rhs}
            for v in report.violations
        ],
    }
    return Report(
        command="validate",
        version=__version__,
        verdict=report.ok,
        details=details,
    )


def handle_filtration(request: CoalgebraRequest) -> Report:
    c = _coalgebra(request.coalgebra)
    filtration = coradical_filtration(c)
    details = {
        "step_dims": list(filtration.step_dims),
        "radical_power_dims": [s.dim for s in filtration.radical_powers],
        "terminated": filtration.terminated,
    }
    return Report(
        command="filtration",
        version=__version__,
        verdict=filtration.terminated,
        details=details,
    )


def handle_chain(request: CoalgebraRequest) -> Report:
    c = _coalgebra(request.coalgebra)
    report = is_chain(c, seed=request.seed)
    warnings = []
    if not report.certified:
        warnings.append(
            "some simplicity verdicts are randomized only; rerun with other seeds to vary trials")
    details = {
        "chain": report.chain,
        "factors": [
            {"step": fe.step, "dim": fe.dim, "simple": fe.simple, "certified": fe.certified}
            for fe in report.factors
        ],
        "step_dims": list(report.filtration.step_dims),
        "lattice_dims": list(report.lattice_dims) if report.chain else None,
    }
    return Report(
        command="chain",
        version=__version__,
        verdict=report.chain,
        details=details,
        warnings=warnings,
        seed=request.seed,
    )


def handle_dual_ideals(request: CoalgebraRequest) -> Report:
    c = _coalgebra(request.coalgebra)
    algebra = dual_algebra(c)
    ideals = enumerate_basis_ideals(algebra)
    table = []
    all_restored = True
    for ideal in ideals:
        restored = coideal_perp(c, ideal_perp(algebra, ideal)) == ideal
        all_restored = all_restored and restored
        table.append({
            "dim": ideal.dim,
            "perp_dim": c.dim - ideal.dim,
            "double_perp_restores": restored,
        })
    details = {
        "ideal_count": len(ideals),
        "ideal_dims": [i.dim for i in ideals],
        "double_perp": table,
        "all_restored": all_restored,
    }
    return Report(
        command="dual-ideals",
        version=__version__,
        verdict=all_restored,
        details=details,
    )


def handle_split(request: SplitRequest) -> Report:
    presentation = presentation_from_json(
        request.presentation.as_file_dict(), precision_override=request.precision)
    decomposition = diagonalize(presentation)
    certificate = split_certificate(presentation, decomposition)
    torsion = torsion_part(decomposition)
    ring = presentation.ring
    reassembled = True
    if presentation.rows:
        u = [list(r) for r in decomposition.left_transform]
        a = [list(r) for r in presentation.relations]
        v = [list(r) for r in decomposition.right_transform]
        uav = mat_mul(ring, mat_mul(ring, u, a), v)
        reassembled = mat_eq_at_precision(uav, [list(r) for r in decomposition.diagonal])
        u_ok = mat_is_identity(
            ring, mat_mul(ring, u, [list(r) for r in decomposition.left_inverse]))
    else:
        u_ok = True
    v_ok = mat_is_identity(
        ring,
        mat_mul(ring, [list(r) for r in decomposition.right_transform],
                [list(r) for r in decomposition.right_inverse]))
    warnings = []
    if decomposition.precision_limited:
        warnings.append(
            "precision-limited: a zero decision rested on truncated coefficients; "
            "raise --precision for an exact verdict")
    ring_tag = request.presentation.ring
    details = {
        "ring": ring_tag if isinstance(ring_tag, str) else {"GF": ring_tag.GF},
        "precision": ring.precision,
        "generators": presentation.generators,
        "free_rank": decomposition.free_rank,
        "torsion_exponents": list(decomposition.torsion_exponents),
        "torsion_dim": torsion.torsion_dim,
        "residue_dim": torsion.residue_dim,
        "idempotent_verified": certificate.idempotent_verified,
        "reassembly_verified": reassembled,
        "transforms_verified": u_ok and v_ok,
        "precision_limited": decomposition.precision_limited,
    }
    verdict = certificate.idempotent_verified and reassembled and u_ok and v_ok
    return Report(
        command="split",
        version=__version__,
        verdict=verdict,
        details=details,
        warnings=warnings,
        seed=request.seed,
    )


def handle_recognize_kn(request: CoalgebraRequest) -> Report:
    c = _coalgebra(request.coalgebra)
    result = recognize_kn(c)
    if isinstance(result, CoalgebraIso):
        details = {
            "recognized": True,
            "n": c.dim,
            "matrix": [[str(x) for x in row] for row in result.matrix.entries],
        }
        verdict = True
    else:
        details = {
            "recognized": False,
            "reason": result.reason,
            "detail": result.detail,
        }
        verdict = False
    return Report(
        command="recognize-kn",
        version=__version__,
        verdict=verdict,
        details=details,
        seed=request.seed,
    )
