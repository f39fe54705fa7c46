"""JSON-in, JSON-out command line front end.

Every command reads one instance file (or - for stdin), prints a JSON
result with the witnesses needed to re-check the verdict, and exits 0.
Exit codes: 2 malformed input, 3 infeasible scale, 4 internal invariant
violation (a bug or a counterexample to a theorem; the payload says
which procedures disagreed).  All numbers are exact integers; there is
no floating point anywhere in the outputs.

The --oracle flag on check-q-transversal additionally runs the
brute-force definitional test and fails loudly (exit 4) if the two
routes disagree.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import conjectures
from .classical import (
    ClassicalMatroid,
    SetFamily,
    avoid_rado_check,
    avoiding_transversal_by_injections,
    avoiding_transversal_check,
    find_transversal,
    hall_check,
    rado_check,
)
from .errors import INPUT_ERRORS, InfeasibleScale, InvariantViolation
from .fields import field_make, modulus_from_string, prime_power
from .qmatroids import matroid_from_table
from .qtransversals import (
    is_minimal_presentation,
    is_partial_q_transversal,
    presentation_matroid,
    q_hall,
    q_transversal_by_definition,
    recheck_certificate,
    reduce_presentation,
)
from .representation import (
    AlignedFamily,
    QRepresentation,
    aligned_from_family,
    build_aligned_representation,
    represented_rank,
    verify_representation,
)
from .subspaces import (
    VectorSpaceSpec,
    family_from_rows,
    get_lattice,
    subspace_from_rows,
)

SCHEMA = 1


def _load(path: str) -> dict:
    if path == "-":
        doc = json.load(sys.stdin)
    else:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError("instance file must hold a JSON object")
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}, expected {SCHEMA}")
    return doc


def _space(doc: dict) -> VectorSpaceSpec:
    p, e = prime_power(int(doc["q"]))
    return VectorSpaceSpec(field_make(p, e), int(doc["dim"]))


def _set_family(doc: dict) -> SetFamily:
    return SetFamily(
        tuple(doc["ground"]), tuple(frozenset(m) for m in doc["members"])
    )


def _classical_matroid(doc: dict, ground) -> ClassicalMatroid:
    block = doc["matroid"]
    kind = block.get("kind", "free")
    if kind == "free":
        return ClassicalMatroid.free(ground)
    if kind == "linear":
        p, e = prime_power(int(block["q"]))
        fieldspec = field_make(p, e)
        columns = [
            [fieldspec.parse_code(digit) for digit in _chunks(col, fieldspec.e)]
            for col in block["columns"]
        ]
        return ClassicalMatroid.linear(ground, fieldspec, columns)
    raise ValueError(f"unknown classical matroid kind {kind!r}")


def _chunks(text: str, width: int) -> list[str]:
    if len(text) % width:
        raise ValueError(f"column string {text!r} is not a multiple of {width} digits")
    return [text[i : i + width] for i in range(0, len(text), width)]


def _emit(payload: dict, instance: dict, command: str) -> None:
    body = {"schema": SCHEMA, "command": command, "instance": instance}
    body.update(payload)
    print(json.dumps(body, sort_keys=True, indent=2))


def _cmd_hall(doc, args):
    fam = _set_family(doc)
    verdict = hall_check(fam)
    transversal = find_transversal(fam)
    if verdict.ok != (transversal is not None):
        raise InvariantViolation(
            "Hall condition and maximum matching disagree",
            payload=fam.to_jsonable(),
        )
    payload = {"verdict": verdict.ok}
    if verdict.ok:
        payload["transversal"] = [transversal[i + 1] for i in range(len(fam))]
    else:
        payload["witness_J"] = list(verdict.witness_J)
    _emit(payload, fam.to_jsonable(), "hall")


def _cmd_rado(doc, args):
    fam = _set_family(doc)
    matroid = _classical_matroid(doc, fam.ground)
    verdict = rado_check(matroid, fam)
    payload = {"verdict": verdict.ok, "matroid": matroid.provenance}
    if not verdict.ok:
        payload["witness_J"] = list(verdict.witness_J)
    _emit(payload, doc, "rado")


def _cmd_avoid_rado(doc, args):
    fam = _set_family(doc)
    matroid = _classical_matroid(doc, fam.ground)
    verdict = avoid_rado_check(matroid, fam)
    payload = {"verdict": verdict.ok, "matroid": matroid.provenance}
    if not verdict.ok:
        payload["witness_J"] = list(verdict.witness_J)
    _emit(payload, doc, "avoid-rado")


def _cmd_check_transversal(doc, args):
    fam = _set_family(doc)
    t = frozenset(doc["T"])
    verdict = avoiding_transversal_check(t, fam)
    payload = {"verdict": verdict}
    if args.oracle:
        oracle = avoiding_transversal_by_injections(t, fam)
        payload["oracle_verdict"] = oracle
        if oracle != verdict:
            raise InvariantViolation(
                "avoidance J-test and injection search disagree",
                payload={"T": sorted(t), "family": fam.to_jsonable()},
            )
    _emit(payload, doc, "check-transversal")


def _cmd_q_hall(doc, args):
    spec = _space(doc)
    fam = family_from_rows(spec, doc["family"])
    verdict = q_hall(fam)
    payload = {"verdict": verdict.ok}
    if not verdict.ok:
        payload["witness_J"] = list(verdict.witness_J)
    _emit(payload, doc, "q-hall")


def _cmd_check_q_transversal(doc, args):
    spec = _space(doc)
    fam = family_from_rows(spec, doc["family"])
    t = subspace_from_rows(spec, doc["subspace"])
    cert = is_partial_q_transversal(t, fam)
    if not recheck_certificate(cert, t, fam):
        raise InvariantViolation(
            "certificate failed its own re-check",
            payload={"T": t.to_rows(), "family": fam.to_rows()},
        )
    payload = {"verdict": cert.verdict, "certificate": cert.to_jsonable(spec)}
    if args.oracle:
        oracle = q_transversal_by_definition(t, fam)
        payload["oracle_verdict"] = oracle
        if oracle != cert.verdict:
            raise InvariantViolation(
                "fast q-transversal test and definitional oracle disagree",
                payload={"T": t.to_rows(), "family": fam.to_rows()},
            )
    _emit(payload, doc, "check-q-transversal")


def _cmd_build_matroid(doc, args):
    spec = _space(doc)
    fam = family_from_rows(spec, doc["family"])
    matroid = presentation_matroid(fam)
    _emit({"matroid": matroid.to_jsonable()}, doc, "build-matroid")


def _cmd_reduce_presentation(doc, args):
    spec = _space(doc)
    fam = family_from_rows(spec, doc["family"])
    reduced = reduce_presentation(fam)
    _emit(
        {
            "family": reduced.to_rows(),
            "members": len(reduced),
            "rank": presentation_matroid(fam).space_rank,
        },
        doc,
        "reduce-presentation",
    )


def _cmd_check_minimal(doc, args):
    spec = _space(doc)
    fam = family_from_rows(spec, doc["family"])
    report = is_minimal_presentation(fam)
    payload = {"verdict": report.minimal}
    if not report.minimal:
        payload["witness"] = {
            "index": report.witness_index,
            "shrunken_member": report.shrunken_member.to_rows(),
            "replacement_family": report.replacement.to_rows(),
        }
    _emit(payload, doc, "check-minimal")


def _cmd_represent_aligned(doc, args):
    spec = _space(doc)
    if "index_sets" in doc:
        aligned = AlignedFamily(
            spec, tuple(frozenset(s) for s in doc["index_sets"])
        )
    else:
        fam = family_from_rows(spec, doc["family"])
        aligned = aligned_from_family(fam)
        if aligned is None:
            raise ValueError("family members are not coordinate subspaces")
    rep = build_aligned_representation(aligned, minimize_degree=args.minimize_degree)
    _emit(
        {
            "representation": rep.to_jsonable(),
            "verified": True,
            "ext_degree_over_base": rep.ext.e // spec.field.e,
        },
        doc,
        "represent-aligned",
    )


def _parse_representation(doc: dict, spec: VectorSpaceSpec) -> QRepresentation:
    block = doc["representation"]
    ext_info = block["ext"]
    ext = field_make(
        int(ext_info["p"]), int(ext_info["e"]), modulus_from_string(ext_info["modulus"])
    )
    matrix = tuple(
        tuple(ext.parse_code(digit) for digit in _chunks(row, ext.e))
        for row in block["matrix"]
    )
    return QRepresentation(spec, ext, matrix)


def _cmd_verify_representation(doc, args):
    spec = _space(doc)
    rep = _parse_representation(doc, spec)
    if "family" in doc:
        matroid = presentation_matroid(family_from_rows(spec, doc["family"]))
    else:
        lattice = get_lattice(spec)
        table = {
            tuple(entry["subspace"]): int(entry["rank"])
            for entry in doc["matroid"]["rank_table"]
        }
        try:
            ranks = [table[tuple(s.to_rows())] for s in lattice.subspaces]
        except KeyError as missing:
            raise ValueError(f"rank table misses subspace {missing}") from None
        matroid = matroid_from_table(lattice, ranks)
    ok, bad = verify_representation(rep, matroid)
    payload = {"verdict": ok}
    if not ok:
        payload["first_disagreement"] = {
            "subspace": bad.to_rows(),
            "represented_rank": represented_rank(rep, bad),
            "expected_rank": matroid.rank(bad),
        }
    _emit(payload, doc, "verify-representation")


def _cmd_scan(doc, args):
    block = doc["scan"]
    cfg = conjectures.ScanConfig(
        q=int(block["q"]),
        max_dim=int(block["max_dim"]),
        max_family=int(block["max_family"]),
        mode=block.get("mode", "exhaustive"),
        seed=block.get("seed"),
        count=block.get("count"),
        shards=int(block.get("shards", 1)),
    )
    kind = block["kind"]
    if kind == "q-rado":
        report = conjectures.scan_q_rado(cfg)
    elif kind == "minimal-uniqueness":
        report = conjectures.scan_minimal_uniqueness(cfg)
    elif kind == "representability":
        report = conjectures.scan_representability(
            cfg,
            max_ext_degree=int(block["max_ext_degree"]),
            attempts_per_degree=int(block.get("attempts_per_degree", 200)),
        )
    else:
        raise ValueError(f"unknown scan kind {kind!r}")
    _emit({"report": report.to_jsonable(include_timing=args.timing)}, doc, "scan")


_COMMANDS = {
    "hall": _cmd_hall,
    "rado": _cmd_rado,
    "avoid-rado": _cmd_avoid_rado,
    "check-transversal": _cmd_check_transversal,
    "q-hall": _cmd_q_hall,
    "check-q-transversal": _cmd_check_q_transversal,
    "build-matroid": _cmd_build_matroid,
    "reduce-presentation": _cmd_reduce_presentation,
    "check-minimal": _cmd_check_minimal,
    "represent-aligned": _cmd_represent_aligned,
    "verify-representation": _cmd_verify_representation,
    "scan": _cmd_scan,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qtransversal",
        description="q-matroid and q-transversal decision procedures with JSON certificates",
    )
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("input", help="path to a JSON instance file, or - for stdin")
    parser.add_argument(
        "--oracle",
        action="store_true",
        help="also run the brute-force definitional path and cross-check",
    )
    parser.add_argument(
        "--minimize-degree",
        action="store_true",
        help="represent-aligned: search for the smallest working extension degree",
    )
    parser.add_argument(
        "--timing",
        action="store_true",
        help="scan: include wall-clock time in the report (breaks byte-for-byte determinism)",
    )
    args = parser.parse_args(argv)
    try:
        doc = _load(args.input)
        _COMMANDS[args.command](doc, args)
    except InvariantViolation as exc:
        print(
            json.dumps(
                {
                    "schema": SCHEMA,
                    "error": "invariant-violation",
                    "message": str(exc),
                    "payload": exc.payload,
                    "meaning": "a bug or a counterexample to a verified theorem",
                },
                sort_keys=True,
                indent=2,
            )
        )
        return 4
    except InfeasibleScale as exc:
        print(
            json.dumps(
                {"schema": SCHEMA, "error": "infeasible-scale", "message": str(exc)},
                sort_keys=True,
                indent=2,
            )
        )
        return 3
    except (*INPUT_ERRORS, ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(
            json.dumps(
                {
                    "schema": SCHEMA,
                    "error": "malformed-input",
                    "message": f"{type(exc).__name__}: {exc}",
                },
                sort_keys=True,
                indent=2,
            )
        )
        return 2
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
