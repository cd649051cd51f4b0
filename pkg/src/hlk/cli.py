"""Command-line entry point.

Subcommands: ``catalog`` (write example input files), ``validate``,
``lefschetz``, ``llgen``, ``gkcoh`` and ``assemble`` (run a module's
full check battery over input files).

Exit status: 0 all checks pass, 1 at least one check failed, 2 input
error.  Reports are canonical JSON (sorted keys); everything except the
"timings" section is deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time

from . import __version__
from . import assembler as asm
from . import catalog
from . import fileio
from . import gkcoh
from . import lefschetz as lz
from . import llgen
from .algebra import validate_algebra
from .exactlin import Scalar, hermitian_definiteness, kernel_image

LARGE_EVEN_PART = 12


class CheckFailure(Exception):
    pass


def _workers() -> int:
    raw = os.environ.get("HLK_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise fileio.InputError(f"HLK_THREADS={raw!r} is not an integer")
    if value < 1:
        raise fileio.InputError("HLK_THREADS must be >= 1")
    return value


class Report:
    def __init__(self, command: str):
        self.doc = {
            "command": command,
            "version": __version__,
            "workers_cap": _workers(),
            "inputs": [],
            "checks": [],
            "summary": {},
            "timings": {},
        }

    def add_input(self, path: str):
        with open(path, "rb") as fh:
            digest = hashlib.sha256(fh.read()).hexdigest()
        self.doc["inputs"].append({"path": str(path), "sha256": digest})

    def check(self, name: str, ok, detail=""):
        status = "pass" if ok else "fail"
        self.doc["checks"].append(
            {"name": name, "status": status, "detail": str(detail)})
        print(f"[{status.upper():4s}] {name}" + (f": {detail}" if detail else ""))

    def skip(self, name: str, detail=""):
        self.doc["checks"].append(
            {"name": name, "status": "skip", "detail": str(detail)})
        print(f"[SKIP] {name}" + (f": {detail}" if detail else ""))

    def timing(self, name: str, seconds: float):
        self.doc["timings"][name] = round(seconds, 6)

    @property
    def failed(self) -> bool:
        return any(c["status"] == "fail" for c in self.doc["checks"])

    def write(self, path):
        if path:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(fileio.canonical_dumps(self.doc))


def _load_inputs(paths, report: Report):
    loaded = []
    for path in paths:
        kind, obj = fileio.load_document(path)
        report.add_input(path)
        loaded.append((kind, obj, path))
    return loaded


# -- catalog -----------------------------------------------------------------


def _catalog_files(name: str, args):
    if name == "torus":
        return [("torus.algebra.json",
                 fileio.algebra_to_doc(catalog.torus_algebra()))]
    if name == "abelian-surface":
        return [("abelian-surface.algebra.json",
                 fileio.algebra_to_doc(catalog.abelian_surface_algebra()))]
    if name == "k3-mock":
        return [("k3-mock.algebra.json",
                 fileio.algebra_to_doc(catalog.k3_algebra()))]
    if name == "g2-family":
        k = args.k
        return [(f"g2-k{k}.algebra.json",
                 fileio.algebra_to_doc(catalog.g2_family_algebra(k)))]
    if name == "s1s2":
        alg, _ = catalog.s1s2_model(args.n)
        return [(f"s1s2-N{args.n}.algebra.json", fileio.algebra_to_doc(alg))]
    if name == "sl2-pair":
        return [("sl2R.pair.json", fileio.pair_to_doc(catalog.sl2_pair()))]
    if name == "sl2-product-pair":
        return [("sl2R-x-sl2R.pair.json",
                 fileio.pair_to_doc(catalog.sl2_product_pair()))]
    if name == "sl2-trivial":
        return [("sl2-trivial.module.json",
                 fileio.module_to_doc(catalog.sl2_trivial_module(args.window)))]
    if name == "sl2-adjoint":
        return [("sl2-adjoint.module.json",
                 fileio.module_to_doc(catalog.sl2_adjoint_module(args.window)))]
    if name == "sl2-ds-plus":
        return [("sl2-ds-plus.module.json",
                 fileio.module_to_doc(
                     catalog.sl2_discrete_series_module(1, args.window)))]
    if name == "sl2-ds-minus":
        return [("sl2-ds-minus.module.json",
                 fileio.module_to_doc(
                     catalog.sl2_discrete_series_module(-1, args.window)))]
    if name == "genus2-spectrum":
        from .assembler import SpectrumEntry

        entries = [SpectrumEntry(**e) for e in catalog.genus2_spectrum()]
        return [("genus2.spectrum.json", fileio.spectrum_to_doc(entries))]
    if name == "genus2-suite":
        files = []
        for sub in ("sl2-pair", "sl2-trivial", "sl2-ds-plus", "sl2-ds-minus",
                    "genus2-spectrum"):
            files.extend(_catalog_files(sub, args))
        return files
    raise fileio.InputError(f"unknown catalog name {name!r}")


def cmd_catalog(args) -> int:
    if args.list:
        for nm in ("torus", "abelian-surface", "k3-mock", "g2-family",
                   "s1s2", "sl2-pair", "sl2-product-pair", "sl2-trivial",
                   "sl2-adjoint", "sl2-ds-plus", "sl2-ds-minus",
                   "genus2-spectrum", "genus2-suite"):
            print(nm)
        return 0
    if not args.name:
        print("catalog: a name is required (or --list)", file=sys.stderr)
        return 2
    files = _catalog_files(args.name, args)
    os.makedirs(args.out_dir, exist_ok=True)
    for fname, doc in files:
        path = os.path.join(args.out_dir, fname)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(fileio.canonical_dumps(doc))
        print(path)
    return 0


# -- validate ----------------------------------------------------------------


def cmd_validate(args) -> int:
    report = Report("validate")
    loaded = _load_inputs(args.input, report)
    pairs = {obj.name: obj for kind, obj, _ in loaded if kind == "pair"}
    for kind, obj, path in loaded:
        t0 = time.perf_counter()
        label = f"{kind}:{os.path.basename(path)}"
        if kind == "algebra":
            rep = validate_algebra(obj)
            report.check(label, rep.ok, rep.summary())
        elif kind == "pair":
            rep = gkcoh.validate_pair(obj)
            report.check(label, rep.ok, rep.summary())
        elif kind == "module":
            pair = pairs.get(obj.pair_name)
            if pair is None:
                report.skip(label, f"pair {obj.pair_name!r} not supplied")
            else:
                split = gkcoh.split_p(pair)
                rep = gkcoh.validate_module(pair, split, obj)
                report.check(label, rep.ok, rep.summary())
        else:
            ok = all(e.multiplicity >= 0 and e.k2_inv_dim >= 0 for e in obj)
            report.check(label, ok, f"{len(obj)} entries")
        report.timing(label, time.perf_counter() - t0)
    report.write(args.report)
    return 1 if report.failed else 0


# -- lefschetz ---------------------------------------------------------------


def _designated_kahler(alg, args):
    if args.omega:
        return alg.basis_vector(args.omega)
    if alg.kahler is None:
        raise fileio.InputError(
            "algebra designates no kahler class; pass --omega NAME")
    return alg.kahler


def cmd_lefschetz(args) -> int:
    report = Report("lefschetz")
    loaded = _load_inputs(args.input, report)
    algebras = [(obj, path) for kind, obj, path in loaded if kind == "algebra"]
    if not algebras:
        raise fileio.InputError("lefschetz needs an algebra input")
    for alg, path in algebras:
        base = alg.name or os.path.basename(path)
        t0 = time.perf_counter()
        rep = validate_algebra(alg)
        report.check(f"{base}:validate", rep.ok, rep.summary())
        if not rep.ok:
            continue
        omega = _designated_kahler(alg, args)
        in_cone = lz.kahler_cone_membership(alg, omega, args.mode)
        report.check(f"{base}:kahler-in-cone", in_cone, f"mode {args.mode}")
        if not in_cone:
            continue
        family = lz.cone_check_family(alg, omega, mode=args.mode)
        report.doc["summary"][f"{base}:family-size"] = len(family)

        hl_ok = True
        for w in family:
            ctx_ok = lz.kahler_cone_membership(alg, w, args.mode)
            power = alg.unit
            for _ in range(alg.g):
                power = alg.mulvec(power, w)
            hl_ok = hl_ok and ctx_ok and not all(x.is_zero() for x in power)
        report.check(f"{base}:hard-lefschetz", hl_ok,
                     f"{len(family)} cone classes, L^(g-r) bijective "
                     f"(mode {args.mode}), omega^g != 0")

        sl2_ok = True
        for w in family:
            tri = lz.dual_lefschetz(alg, w, mode=args.mode)
            sl2_ok = sl2_ok and tri.relations_hold() and \
                tri.Lambda == tri.lambda_solve
        report.check(f"{base}:sl2-triples", sl2_ok,
                     "constructive Lambda = solved Lambda, relations exact")

        # the polarization battery decomposes across all degrees and
        # needs the class in the full cone
        if lz.kahler_cone_membership(alg, omega, "full"):
            q_ok, j_ok = _polarization_symmetries(alg, omega)
            report.check(f"{base}:q-symmetry", q_ok, "Q(a,b) = (-1)^r Q(b,a)")
            report.check(f"{base}:j-invariance", j_ok, "Q(Ja,Jb) = Q(a,b)")
            pd_ok = all(
                hermitian_definiteness(lz.hodge_gram(alg, omega, r))
                for r in sorted(alg.by_degree) if alg.degree_indices(r))
            report.check(f"{base}:polarization-positive", pd_ok,
                         "T Gram positive definite on every degree")
        else:
            report.skip(f"{base}:polarization",
                        "class is outside the full cone")

        if alg.g % 2 == 0:
            sig = lz.hodge_signature(alg)
            report.check(f"{base}:hodge-index", sig.agree,
                         f"signature {sig.formula} (formula) vs "
                         f"{sig.diagonalization} (diagonalization)")
            report.doc["summary"][f"{base}:signature"] = sig.formula
        serre = lz.serre_pairing_check(alg)
        report.check(f"{base}:serre-duality", serre.ok,
                     "; ".join(f"({p},{q}) {msg}" for p, q, msg in serre.failures))
        filt_ok = all(
            lz.filtration_opposed(alg, lz.hodge_filtration(alg, n))
            for n in sorted(alg.by_degree))
        report.check(f"{base}:hodge-filtration", filt_ok,
                     "F^i opposed to conj F^(n-i+1)")
        report.timing(base, time.perf_counter() - t0)
    report.write(args.report)
    return 1 if report.failed else 0


def _polarization_symmetries(alg, omega):
    q_ok = True
    j_ok = True
    jmat = lz.weil_operator(alg)
    for r in sorted(alg.by_degree):
        idxs = alg.degree_indices(r)
        sign = Scalar(-1 if r % 2 else 1)
        for i in idxs:
            a = alg.basis_vector(i)
            for j in idxs:
                b = alg.basis_vector(j)
                qab = lz.polarization_form(alg, omega, a, b)
                if qab != sign * lz.polarization_form(alg, omega, b, a):
                    q_ok = False
                if lz.polarization_form(alg, omega, jmat.apply(a),
                                        jmat.apply(b)) != qab:
                    j_ok = False
    return q_ok, j_ok


# -- llgen -------------------------------------------------------------------


def cmd_llgen(args) -> int:
    report = Report("llgen")
    loaded = _load_inputs(args.input, report)
    algebras = [(obj, path) for kind, obj, path in loaded if kind == "algebra"]
    if not algebras:
        raise fileio.InputError("llgen needs an algebra input")
    for alg, path in algebras:
        base = alg.name or os.path.basename(path)
        t0 = time.perf_counter()
        mode = args.mode or ("even" if alg.g == 2 else "full")
        omega = alg.kahler
        if omega is None:
            # product-style models: any everywhere-nonzero tuple works;
            # fall back to the sum of the degree-2 basis classes
            omega = [Scalar(0)] * alg.n
            for k in alg.degree_indices(2):
                omega[k] = Scalar(1)
            omega = tuple(omega)
        try:
            family, record = lz.spanning_cone_family(alg, omega, mode=mode)
        except lz.ConeError as exc:
            report.check(f"{base}:spanning-family", False, str(exc))
            continue
        report.doc["summary"][f"{base}:family"] = \
            [{"base": nm, "shift": s} for nm, s in record]
        even_dim = sum(1 for k in range(alg.n)
                       if alg.degree_of_index(k) % 2 == 0)
        ambient = even_dim if mode == "even" else alg.n
        if ambient > LARGE_EVEN_PART and not args.force_large:
            report.skip(f"{base}:closure",
                        f"ambient dimension {ambient} > {LARGE_EVEN_PART}; "
                        "pass --force-large to run")
            continue
        gens = []
        for w in family:
            tri = lz.dual_lefschetz(alg, w, mode=mode)
            gens.extend([tri.L, tri.Lambda])
        lie = llgen.lie_closure(gens, cap=args.cap)
        report.check(f"{base}:closure", lie.closed,
                     f"dimension {lie.dim} (mode {mode})")
        report.doc["summary"][f"{base}:dimension"] = lie.dim
        report.doc["summary"][f"{base}:bracket-digest"] = \
            llgen.bracket_table_digest(lie)

        # enlarging the generating family must not grow the algebra
        extra = None
        deg2 = alg.degree_indices(2)
        for lam in range(2, 7) if deg2 else ():
            cand = tuple(Scalar(lam) * x for x in omega)
            cand = tuple(a + b for a, b in
                         zip(cand, alg.basis_vector(deg2[0])))
            if lz.kahler_cone_membership(alg, cand, mode):
                extra = cand
                break
        if extra is not None and lie.closed:
            tri = lz.dual_lefschetz(alg, extra, mode=mode)
            span = lie.span()
            stable = not span.add(tri.L.entries) and \
                not span.add(tri.Lambda.entries)
            report.check(f"{base}:family-stability", stable,
                         "an extra cone class stays inside the closure")

        if alg.g == 2 and alg.dense_leaf and mode == "even":
            verdict = llgen.so_phi_equality(alg, lie)
            report.check(f"{base}:so-phi",
                         verdict.equal,
                         f"dim {verdict.dim} vs so dim {verdict.so_dim}, "
                         f"annihilators {verdict.annihilators}")
            report.check(f"{base}:killing-nondegenerate",
                         llgen.killing_nondegenerate(lie), "")
            kernels_ok = True
            for w in family:
                tri = lz.dual_lefschetz(alg, w, mode=mode)
                deg2 = [t for t, gidx in enumerate(tri.indices)
                        if alg.degree_of_index(gidx) == 2]
                lker, _ = kernel_image(tri.L.submatrix(
                    range(tri.L.rows), deg2))
                mker, _ = kernel_image(tri.Lambda.submatrix(
                    range(tri.Lambda.rows), deg2))
                kernels_ok = kernels_ok and lker == mker
            report.check(f"{base}:lambda-kernel",
                         kernels_ok, "ker Lambda|H2 = ker L|H2")
        ideals = llgen.minimal_ideals(lie)
        all_sl2 = all(llgen.is_sl2_block(i) for i in ideals)
        report.doc["summary"][f"{base}:minimal-ideals"] = \
            sorted(i.dim for i in ideals)
        simple = len(ideals) == 1 and ideals[0].dim == lie.dim
        report.check(f"{base}:ideal-census",
                     simple or all_sl2,
                     f"{len(ideals)} minimal ideal(s), dims "
                     f"{sorted(i.dim for i in ideals)}")
        report.timing(base, time.perf_counter() - t0)
    report.write(args.report)
    return 1 if report.failed else 0


# -- gkcoh -------------------------------------------------------------------


def _pair_and_modules(loaded):
    pairs = [(obj, path) for kind, obj, path in loaded if kind == "pair"]
    modules = [(obj, path) for kind, obj, path in loaded if kind == "module"]
    if len(pairs) != 1:
        raise fileio.InputError("exactly one pair input is required")
    if not modules:
        raise fileio.InputError("at least one module input is required")
    return pairs[0][0], [m for m, _ in modules]


def cmd_gkcoh(args) -> int:
    report = Report("gkcoh")
    loaded = _load_inputs(args.input, report)
    pair, modules = _pair_and_modules(loaded)
    rep = gkcoh.validate_pair(pair)
    report.check(f"pair:{pair.name}", rep.ok, rep.summary())
    if not rep.ok:
        report.write(args.report)
        return 1
    split = gkcoh.split_p(pair)
    report.doc["summary"]["p-split-dims"] = [len(split.plus), len(split.minus)]
    for module in modules:
        t0 = time.perf_counter()
        label = module.name
        vrep = gkcoh.validate_module(pair, split, module)
        report.check(f"{label}:validate", vrep.ok, vrep.summary())
        if not vrep.ok:
            continue
        try:
            analysis = gkcoh.analyze_module(pair, split, module)
        except gkcoh.WindowError as exc:
            report.check(f"{label}:window", False, str(exc))
            continue
        cx = gkcoh.build_complex(pair, split, module)
        report.check(f"{label}:d-squared", gkcoh.complex_sanity(cx),
                     "d'^2 = d''^2 = d'd''+d''d' = 0")
        report.check(f"{label}:dichotomy", analysis.dichotomy.holds
                     or analysis.dichotomy.branch == "not-applicable",
                     f"{analysis.dichotomy.branch}: "
                     f"{analysis.dichotomy.detail}")
        total = gkcoh.ungraded_cohomology_dims(cx)
        graded = analysis.hodge_dims
        sums = {}
        for (p, q), d in graded.items():
            sums[p + q] = sums.get(p + q, 0) + d
        match = all(sums.get(n, 0) == total.get(n, 0)
                    for n in set(sums) | set(total))
        report.check(f"{label}:bigraded-total", match,
                     "sum of h^(p,q) equals ungraded dim H^n")
        lap = gkcoh.laplacian_kernel_dims(pair, split, module, cx)
        lap_ok = all(lap.get(n, 0) == total.get(n, 0)
                     for n in set(lap) | set(total))
        report.check(f"{label}:harmonic", lap_ok,
                     "dim ker Laplacian = dim H^n")
        report.doc["summary"][f"{label}:hodge"] = \
            {f"{p},{q}": d for (p, q), d in sorted(graded.items()) if d}
        report.doc["summary"][f"{label}:casimir"] = \
            {str(w): str(s) for w, s in analysis.casimir.scalars.items()}
        report.timing(label, time.perf_counter() - t0)
    report.write(args.report)
    return 1 if report.failed else 0


# -- assemble ----------------------------------------------------------------


def cmd_assemble(args) -> int:
    report = Report("assemble")
    loaded = _load_inputs(args.input, report)
    pair, modules = _pair_and_modules(loaded)
    spectra = [obj for kind, obj, _ in loaded if kind == "spectrum"]
    if len(spectra) != 1:
        raise fileio.InputError("exactly one spectrum input is required")
    entries = spectra[0]
    rep = gkcoh.validate_pair(pair)
    report.check(f"pair:{pair.name}", rep.ok, rep.summary())
    split = gkcoh.split_p(pair)
    analyses = {}
    for module in modules:
        vrep = gkcoh.validate_module(pair, split, module)
        report.check(f"{module.name}:validate", vrep.ok, vrep.summary())
        analyses[module.name] = gkcoh.analyze_module(pair, split, module)
    try:
        assembled = asm.assemble(entries, analyses)
    except KeyError as exc:
        raise fileio.InputError(f"spectrum references unknown module {exc}")
    report.doc["summary"]["hodge-table"] = \
        {f"{p},{q}": d for (p, q), d in sorted(assembled.table.items())}
    report.doc["summary"]["betti"] = assembled.betti_numbers()
    report.doc["summary"]["flagged"] = assembled.flagged
    print(asm.render_diamond(assembled))
    checks = asm.diamond_checks(assembled, analyses)
    report.check("diamond:hodge-symmetry", checks.hodge_symmetric, "")
    report.check("diamond:odd-betti-even", checks.odd_betti_even, "")
    report.check("diamond:serre-symmetry", checks.serre_symmetric, "")
    report.check("diamond:hard-lefschetz", checks.lefschetz_injective, "")
    if checks.failures:
        report.doc["summary"]["diamond-failures"] = checks.failures
    report.write(args.report)
    return 1 if report.failed else 0


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hlk",
        description="Exact checks for polarized Lefschetz structures, "
                    "operator Lie algebras and relative Lie algebra "
                    "cohomology on finite models.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", help="write example input files")
    cat.add_argument("name", nargs="?", help="catalog entry name")
    cat.add_argument("--list", action="store_true", help="list entries")
    cat.add_argument("--out-dir", default=".", help="output directory")
    cat.add_argument("--k", type=int, default=3,
                     help="dim H^2 for g2-family")
    cat.add_argument("--n", type=int, default=3, help="factors for s1s2")
    cat.add_argument("--window", type=int, default=6,
                     help="weight window for module files")
    cat.set_defaults(func=cmd_catalog)

    def common(p):
        p.add_argument("--input", action="append", required=True,
                       help="input file (repeatable)")
        p.add_argument("--report", default=None, help="report file path")

    val = sub.add_parser("validate", help="validate input files")
    common(val)
    val.set_defaults(func=cmd_validate)

    lef = sub.add_parser("lefschetz", help="Lefschetz/Hodge check battery")
    common(lef)
    lef.add_argument("--mode", default="full", choices=["full", "even", "odd"])
    lef.add_argument("--omega", default=None,
                     help="basis element to use as the Kahler class")
    lef.set_defaults(func=cmd_lefschetz)

    llg = sub.add_parser("llgen", help="operator Lie algebra battery")
    common(llg)
    llg.add_argument("--mode", default=None, choices=["full", "even", "odd"])
    llg.add_argument("--cap", type=int, default=2000,
                     help="closure basis cap")
    llg.add_argument("--force-large", action="store_true",
                     help="run closures on large even parts")
    llg.set_defaults(func=cmd_llgen)

    gkc = sub.add_parser("gkcoh", help="relative Lie algebra cohomology")
    common(gkc)
    gkc.set_defaults(func=cmd_gkcoh)

    asmp = sub.add_parser("assemble", help="assemble a mock spectrum")
    common(asmp)
    asmp.set_defaults(func=cmd_assemble)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (fileio.InputError, lz.ConeError, gkcoh.WindowError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
