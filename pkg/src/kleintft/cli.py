"""Command-line interface: ``kleintft <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import exact
from .algebra import AlgebraElement, CrosscapError
from .cache import load_or_build
from .correlator import correlator, evaluate, make_query, verify_cut_relations
from .formats import (BasisLabels, algebra_to_json, dumps, element_from_ref, format_rational, parse_boundary,
	parse_interior, resolve_a, resolve_b, table_rows, tables_csv)
from .oracle import InfeasibleError, closed_result, disc_mixed_result, polygon_result
from .permgroup import DEFAULT_ORDER_CAP, GroupTable, GroupTooLargeError, parse_permutation, symmetric_group
from .relations import cardy_axiom, crosscap_axioms, verify_relations
from .semisimple import (FieldObstructionError, InvalidModelError, SemisimpleModel, count_extensions,
	enumerate_crosscaps, realize_tensors, validate_model)

EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_CAP = 3


class UsageError(ValueError):
	pass


def _bool(text: str) -> bool:
	t = text.strip().lower()
	if t in ("true", "1", "yes", "y"):
		return True
	if t in ("false", "0", "no", "n"):
		return False
	raise argparse.ArgumentTypeError(f"expected true/false, got {text!r}")


def build_group(args) -> GroupTable:
	if args.n is None:
		raise UsageError("--n is required (degree of the permutation group)")
	if args.generators:
		gens = [parse_permutation(t, args.n) for t in args.generators.split(";") if t.strip()]
		return GroupTable(args.n, gens, cap=args.order_cap)
	return symmetric_group(args.n, cap=args.order_cap)


def _emit(args, payload: dict, plain: str):
	if args.format == "json":
		sys.stdout.write(dumps(payload))
	else:
		print(plain)


def _value_payload(q: Fraction, decimal: bool) -> dict:
	out = {"value": exact.fmt(q)}
	if decimal:
		out["decimal"] = float(q)
	return out


def cmd_hurwitz(args) -> int:
	g = build_group(args)
	alg = load_or_build(g, args.cache_dir)
	xs = [AlgebraElement.basis_a(resolve_a(alg, r)) for r in parse_interior(args.interior or "")]
	blocks = [[AlgebraElement.basis_b(resolve_b(alg, r)) for r in blk] for blk in parse_boundary(args.boundary or "")]
	if args.orientable and args.genus2 % 2:
		raise UsageError("an orientable surface needs an even --genus2")
	if not args.orientable and args.genus2 < 1:
		raise UsageError("a nonorientable surface needs --genus2 >= 1")
	value = evaluate(alg, args.genus2, args.orientable, xs, blocks)
	payload = {"genus2": args.genus2, "orientable": args.orientable, "interior": parse_interior(args.interior or ""),
		"boundary": parse_boundary(args.boundary or ""), **_value_payload(value, args.decimal)}
	_emit(args, payload, format_rational(value, args.decimal))
	return 0


def _load_json_arg(text: str):
	if text.startswith("@"):
		return json.loads(Path(text[1:]).read_text())
	p = Path(text)
	if not text.lstrip().startswith(("{", "[")) and p.exists():
		return json.loads(p.read_text())
	return json.loads(text)


def cmd_correlator(args) -> int:
	g = build_group(args)
	alg = load_or_build(g, args.cache_dir)
	q = _load_json_arg(args.query)
	surf = q["surface"]
	xs = [element_from_ref(alg, r, "A") for r in q.get("interior", [])]
	blocks = [[element_from_ref(alg, r, "B") for r in blk] for blk in q.get("blocks", [])]
	query = make_query(int(surf["g2"]), bool(surf["orientable"]), xs, blocks)
	if "m" in surf and int(surf["m"]) != query.surface.m:
		raise UsageError("surface.m does not match the interior arguments")
	if "boundary" in surf and sorted(surf["boundary"]) != list(query.surface.boundary):
		raise UsageError("surface.boundary does not match the blocks")
	value = correlator(alg, query)
	payload = {"mu": exact.fmt(query.surface.mu()), **_value_payload(value, args.decimal)}
	_emit(args, payload, format_rational(value, args.decimal))
	return 0


def cmd_tables(args) -> int:
	g = build_group(args)
	alg = load_or_build(g, args.cache_dir)
	if args.format == "csv":
		sys.stdout.write(tables_csv(alg))
	elif args.format == "plain":
		for row, col, val in table_rows(alg):
			print(f"{row} {col} = {val}")
	else:
		sys.stdout.write(dumps(algebra_to_json(alg)))
	return 0


def oracle_equivalence(alg) -> list[tuple[str, bool, str]]:
	"""Compare S, T, R and D with direct covering counts."""
	from .oracle import count_closed, count_disc_mixed, count_polygon
	g, d = alg.group, alg.pair_classes
	out = []
	A, B = range(alg.dim_a), range(alg.dim_b)
	bad = next(((i, j, k) for i in A for j in A for k in A if alg.S[i, j, k] != count_closed(g, 0, True, [i, j, k])), None)
	out.append(("oracle-S", bad is None, f"witness {bad}" if bad else "sphere with three branch points"))
	bad = next(((i, j, k) for i in B for j in B for k in B if alg.T[i, j, k] != count_polygon(g, d, [i, j, k])), None)
	out.append(("oracle-T", bad is None, f"witness {bad}" if bad else "triangle involution triples"))
	bad = next(((i, j) for i in A for j in B if alg.R[i, j] != count_disc_mixed(g, d, i, j)), None)
	out.append(("oracle-R", bad is None, f"witness {bad}" if bad else "disc with one interior and one boundary point"))
	bad = next(((i,) for i in A if alg.D[i] != count_closed(g, 1, False, [i])), None)
	out.append(("oracle-D", bad is None, f"witness {bad}" if bad else "projective plane with one branch point"))
	return out


def cmd_verify(args) -> int:
	g = build_group(args)
	alg = load_or_build(g, args.cache_dir)
	lines: list[tuple[str, bool, str]] = []
	for r in verify_relations(alg, threads=args.threads).results:
		lines.append((f"relation-{r.name}", r.passed, r.description if r.passed else f"{r.description} {r.witness} {r.detail}"))
	for r in crosscap_axioms(alg).results:
		lines.append((f"axiom-{r.name}", r.passed, r.description))
	c = cardy_axiom(alg)
	lines.append(("axiom-cardy", c.passed, c.description))
	if not args.skip_cut:
		cut = verify_cut_relations(alg, n_exhaustive_dim=args.exhaustive_dim, samples=args.samples,
			seed=args.seed, threads=args.threads)
		for name, r in cut.results.items():
			mode = "exhaustive" if r.exhaustive else "sampled"
			lines.append((f"cut-{name}", r.passed, f"{r.instances} instances ({mode})"))
	if not args.skip_oracle:
		lines += oracle_equivalence(alg)
	ok = all(p for _, p, _ in lines)
	payload = {"group": g.descriptor(), "passed": ok,
		"checks": [{"name": n, "passed": p, "detail": d} for n, p, d in lines]}
	plain = "\n".join(f"[{'PASS' if p else 'FAIL'}] {n}: {d}" for n, p, d in lines)
	plain += f"\n{'ALL PASS' if ok else 'FAILURES PRESENT'}"
	_emit(args, payload, plain)
	return 0 if ok else EXIT_FAIL


def cmd_classify(args) -> int:
	model = SemisimpleModel.from_json(_load_json_arg(args.model))
	if args.action == "validate":
		issues = validate_model(model)
		_emit(args, {"valid": not issues, "issues": issues}, "valid" if not issues else "\n".join(issues))
		return 0 if not issues else EXIT_FAIL
	if args.action == "extensions":
		ext = count_extensions(model)
		rows = [{"sigma": list(s), "star_choices": st, "crosscaps": c} for s, st, c in ext.by_sigma]
		_emit(args, {"total": ext.total, "by_sigma": rows}, str(ext.total))
		return 0
	caps = enumerate_crosscaps(model)
	if args.action == "crosscaps":
		rows = [{"signs": {str(j): s for j, s in c.signs}, "U": [exact.fmt(x) for x in c.vector]} for c in caps]
		_emit(args, {"count": len(caps), "p": model.p, "crosscaps": rows},
			"\n".join(" ".join(exact.fmt(x) for x in c.vector) for c in caps))
		return 0
	alg = realize_tensors(model)
	report = verify_relations(alg, threads=args.threads)
	payload = {"algebra": algebra_to_json(alg, group={"name": "semisimple model", "model": model.to_json()}),
		"relations_passed": report.passed}
	_emit(args, payload, str(report))
	return 0 if report.passed else EXIT_FAIL


def cmd_oracle(args) -> int:
	g = build_group(args)
	from .dihedral import dihedral_classes
	d = dihedral_classes(g)
	lab = BasisLabels(tuple(g.class_labels()), tuple(d.labels()))
	t0 = time.perf_counter()
	if args.kind == "closed":
		classes = [resolve_a(lab, r) for r in parse_interior(args.interior or "")]
		if args.orientable and args.genus2 % 2:
			raise UsageError("an orientable surface needs an even --genus2")
		res = closed_result(g, args.genus2, args.orientable, classes, method=args.method)
	elif args.kind == "polygon":
		blocks = parse_boundary(args.boundary or "")
		if len(blocks) != 1 or not blocks[0]:
			raise UsageError("a polygon takes one boundary block of corners")
		res = polygon_result(g, d, [resolve_b(lab, r) for r in blocks[0]], method=args.method)
	else:
		xs = parse_interior(args.interior or "")
		blocks = parse_boundary(args.boundary or "")
		if len(xs) != 1 or len(blocks) != 1 or len(blocks[0]) != 1:
			raise UsageError("disc-mixed takes one interior class and one boundary point")
		res = disc_mixed_result(g, d, resolve_a(lab, xs[0]), resolve_b(lab, blocks[0][0]))
	elapsed = (time.perf_counter() - t0) * 1000
	payload = {"count": exact.fmt(res.count), "homomorphisms": res.homomorphisms, "elapsed_ms": round(elapsed, 3)}
	_emit(args, payload, format_rational(res.count, args.decimal))
	return 0


def make_parser() -> argparse.ArgumentParser:
	p = argparse.ArgumentParser(prog="kleintft", description="Klein TFT structure algebras of finite groups.")
	sub = p.add_subparsers(dest="command", required=True)

	def common(sp, group=True):
		if group:
			sp.add_argument("--n", type=int, help="degree of the permutation group (S_n unless --generators)")
			sp.add_argument("--generators", help="semicolon-separated generators, e.g. '(1 2);(1 2 3 4)'")
			sp.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP, help="largest group order to enumerate")
			sp.add_argument("--cache-dir", help="directory for cached tensors")
		sp.add_argument("--threads", type=int, default=1)
		sp.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
		sp.add_argument("--decimal", action="store_true", help="also print a decimal approximation")

	def surface(sp):
		sp.add_argument("--genus2", type=int, default=0, help="doubled genus")
		sp.add_argument("--orientable", type=_bool, default=True)
		sp.add_argument("--interior", default="", help="interior classes, e.g. '2;2' or '#1;#1'")
		sp.add_argument("--boundary", default="",
			help="boundary blocks: points separated by '|', blocks by ';', '()' for an empty contour")

	sp = sub.add_parser("hurwitz", help="Hurwitz number of a surface with branch data")
	common(sp)
	surface(sp)
	sp.set_defaults(func=cmd_hurwitz)

	sp = sub.add_parser("correlator", help="evaluate a correlator query given as JSON")
	common(sp)
	sp.add_argument("--query", required=True, help="query JSON text, a file path, or @file")
	sp.set_defaults(func=cmd_correlator)

	sp = sub.add_parser("tables", help="dump the structure-constant tensors")
	common(sp)
	sp.set_defaults(func=cmd_tables, format="json")

	sp = sub.add_parser("verify", help="run the relation, axiom, cutting and oracle suites")
	common(sp)
	sp.add_argument("--samples", type=int, default=500)
	sp.add_argument("--exhaustive-dim", type=int, default=4000)
	sp.add_argument("--seed", type=int, default=0)
	sp.add_argument("--skip-cut", action="store_true")
	sp.add_argument("--skip-oracle", action="store_true")
	sp.set_defaults(func=cmd_verify)

	sp = sub.add_parser("classify", help="semisimple model tools")
	common(sp, group=False)
	sp.add_argument("--model", required=True, help="model JSON text, a file path, or @file")
	sp.add_argument("--action", choices=("validate", "crosscaps", "realize", "extensions"), default="validate")
	sp.set_defaults(func=cmd_classify)

	sp = sub.add_parser("oracle", help="direct covering counts")
	common(sp)
	surface(sp)
	sp.add_argument("--kind", choices=("closed", "polygon", "disc-mixed"), default="closed")
	sp.add_argument("--method", choices=("fast", "naive"), default="fast")
	sp.set_defaults(func=cmd_oracle)
	return p


def run(argv: Sequence[str] | None = None) -> int:
	parser = make_parser()
	args = parser.parse_args(argv)
	try:
		return args.func(args)
	except (GroupTooLargeError, InfeasibleError) as e:
		print(f"error: {e}", file=sys.stderr)
		return EXIT_CAP
	except (UsageError, ValueError, KeyError, json.JSONDecodeError, CrosscapError,
			FieldObstructionError, InvalidModelError) as e:
		print(f"error: {e}", file=sys.stderr)
		return EXIT_INPUT


def main() -> None:
	sys.exit(run())


if __name__ == "__main__":
	main()
