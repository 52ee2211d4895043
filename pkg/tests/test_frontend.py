"""Surface parser, bracket-abstraction compiler, and the pcf CLI."""

import random
import subprocess
import sys
from pathlib import Path

import pytest

from pcfkit.frontend import cli
from pcfkit.frontend import surface as sf
from pcfkit.frontend.elaborate import elaborate, infer_type
from pcfkit.frontend.surface import (
    App, FixS, IfzS, Lam, NumLit, ParseError, PredS, SuccS,
    UnboundVariable, Var, ZeroS, parse,
)
from pcfkit.opsem import run_bounded
from pcfkit.scott import Base, Interpreter, denote
from pcfkit.lifting import unit
from pcfkit.syntax import (
    App as CApp, Arrow, Ifz, Iota, K, S, TypeMismatch, Zero, numeral,
    parse_term_sexp, random_type, term_to_sexp,
)

SAMPLES = Path(__file__).resolve().parent.parent / "samples"

ADD_SRC = """
(fix \\f:nat -> nat -> nat. \\x:nat. \\y:nat.
  ifz x (succ (f x (pred y))) y)
"""


class TestParse:
    def test_application(self):
        assert parse("pred zero") == App(PredS, ZeroS)
        assert parse("succ zero zero") == App(App(SuccS, ZeroS), ZeroS)

    def test_hash_literals_are_succ_chains(self):
        assert parse("#3") == parse("succ (succ (succ zero))")
        assert parse("#0") == ZeroS
        assert parse("#2") == App(SuccS, App(SuccS, ZeroS))

    def test_lambda_and_fix(self):
        got = parse("\\f:nat->nat. fix f")
        assert got == Lam("f", Arrow(Iota, Iota), App(FixS, Var("f")))

    def test_arrow_annotations_associate_right(self):
        lam = parse("\\f:nat->nat->nat. zero")
        assert lam.annot == Arrow(Iota, Arrow(Iota, Iota))
        lam = parse("\\f:(nat->nat)->nat. zero")
        assert lam.annot == Arrow(Arrow(Iota, Iota), Iota)

    def test_trailing_lambda_is_last_argument(self):
        got = parse("fix \\x:nat. x")
        assert got == App(FixS, Lam("x", Iota, Var("x")))

    def test_comments_and_layout(self):
        assert parse("-- intro\n  zero -- trailing\n") == ZeroS

    def test_shadowing(self):
        got = parse("\\x:nat. \\x:nat->nat. x")
        assert got.body.body == Var("x")

    def test_error_positions(self):
        with pytest.raises(ParseError, match="line 1, column 6"):
            parse("succ )")
        with pytest.raises(ParseError, match="line 2"):
            parse("succ\n @")

    def test_unbound_variables(self):
        with pytest.raises(UnboundVariable, match="'y'"):
            parse("\\x:nat. y")
        with pytest.raises(UnboundVariable, match="'x'"):
            parse("(\\x:nat. x) x")

    def test_malformed_programs(self):
        bad = ["", "(zero", "\\x:nat x", "\\x. x", "#", "zero)",
               "\\x:nat. ", "\\zero:nat. zero"]
        for src in bad:
            with pytest.raises(ParseError):
                parse(src)


class TestElaborate:
    def test_identity_is_skk(self):
        want = CApp(
            CApp(S(Iota, Arrow(Iota, Iota), Iota), K(Iota, Arrow(Iota, Iota))),
            K(Iota, Iota))
        assert elaborate(parse("\\x:nat. x")) is want
        applied = CApp(want, numeral(4))
        final, _ = run_bounded(applied, 100)
        assert final is numeral(4)
        assert denote(want, 0).apply(Base(unit(9))) == Base(unit(9))

    def test_constant_function_is_k(self):
        assert elaborate(parse("\\x:nat. zero")) is CApp(K(Iota, Iota), Zero)

    def test_ifz_argument_order(self):
        t = elaborate(parse("ifz #9 #4 #0"))
        assert t is CApp(CApp(CApp(Ifz, numeral(9)), numeral(4)), numeral(0))

    def test_numlit_elaborates_to_numeral(self):
        assert elaborate(NumLit(5)) is numeral(5)
        assert elaborate(parse("#7")) is numeral(7)

    def test_add_program(self):
        add = elaborate(parse(ADD_SRC))
        assert add.ty is Arrow(Iota, Arrow(Iota, Iota))
        applied = CApp(CApp(add, numeral(2)), numeral(1))
        final, _ = run_bounded(applied, 10000)
        assert final is numeral(3)
        assert Interpreter().denote_base(applied, 10) == unit(3)

    def test_bare_fix_is_a_type_error(self):
        for src in ("fix", "\\x:nat. fix"):
            with pytest.raises(TypeMismatch):
                elaborate(parse(src))

    def test_fix_needs_an_endofunction(self):
        with pytest.raises(TypeMismatch):
            elaborate(parse("fix zero"))
        with pytest.raises(TypeMismatch):
            elaborate(parse("fix \\x:nat. \\y:nat. x"))

    def test_application_type_errors(self):
        with pytest.raises(TypeMismatch, match="arrow"):
            elaborate(parse("zero zero"))
        with pytest.raises(TypeMismatch):
            elaborate(parse("succ \\x:nat. x"))


# independent oracle: big-step call-by-name evaluation of surface terms,
# with a global step budget standing in for divergence

class _Out(Exception):
    pass


class _Budget:
    def __init__(self, n):
        self.n = n

    def tick(self):
        if self.n <= 0:
            raise _Out
        self.n -= 1


_ARITY = {"succ": 1, "pred": 1, "ifz": 3, "fix": 1}


def _seval(e, env, budget):
    budget.tick()
    if isinstance(e, NumLit):
        return ("num", e.n)
    if isinstance(e, Var):
        expr, cenv = env[e.name]
        return _seval(expr, cenv, budget)
    if isinstance(e, sf.Prim):
        if e.tag == "zero":
            return ("num", 0)
        return ("prim", e.tag, ())
    if isinstance(e, Lam):
        return ("clo", e, env)
    f = _seval(e.fun, env, budget)
    return _sapply(f, (e.arg, env), budget)


def _force_num(thunk, budget):
    v = _seval(thunk[0], thunk[1], budget)
    assert v[0] == "num", "oracle forced a non-number"
    return v[1]


def _sapply(f, thunk, budget):
    budget.tick()
    if f[0] == "clo":
        lam, cenv = f[1], f[2]
        return _seval(lam.body, {**cenv, lam.name: thunk}, budget)
    assert f[0] == "prim"
    tag, args = f[1], f[2] + (thunk,)
    if len(args) < _ARITY[tag]:
        return ("prim", tag, args)
    if tag == "succ":
        return ("num", _force_num(args[0], budget) + 1)
    if tag == "pred":
        n = _force_num(args[0], budget)
        return ("num", n - 1 if n else 0)
    if tag == "ifz":
        branch = args[0] if _force_num(args[2], budget) == 0 else args[1]
        return _seval(branch[0], branch[1], budget)
    # fix f unfolds to f (fix f) with the recursion packed into a thunk
    fv = _seval(thunk[0], thunk[1], budget)
    return _sapply(fv, (App(FixS, thunk[0]), thunk[1]), budget)


def _oracle(e, budget_n):
    try:
        v = _seval(e, {}, _Budget(budget_n))
    except _Out:
        return None
    return v[1] if v[0] == "num" else None


def _random_surface(rng, env, ty, depth):
    choices = []
    for x, t in env.items():
        if t is ty:
            choices += [("var", x)] * 2
    if ty is Iota:
        choices += [("lit", None)] * 2
        if depth > 0:
            choices += [("unary", None), ("ifz", None), ("ifz", None),
                        ("app", None), ("app", None), ("fix", None)]
    else:
        choices += [("lam", None)] * (4 if depth > 0 else 1)
        if depth > 0:
            choices += [("app", None), ("fix", None)]
        if ty.domain is Iota and ty.codomain is Iota:
            choices.append(("prim1", None))
    kind, payload = rng.choice(choices)
    if kind == "var":
        return Var(payload)
    if kind == "lit":
        return NumLit(rng.randrange(6))
    if kind == "prim1":
        return SuccS if rng.random() < 0.5 else PredS
    if kind == "unary":
        op = SuccS if rng.random() < 0.5 else PredS
        return App(op, _random_surface(rng, env, Iota, depth - 1))
    if kind == "ifz":
        e0 = _random_surface(rng, env, Iota, depth - 1)
        e1 = _random_surface(rng, env, Iota, depth - 1)
        e2 = _random_surface(rng, env, Iota, depth - 1)
        return App(App(App(IfzS, e0), e1), e2)
    if kind == "lam":
        x = f"v{len(env)}"
        body = _random_surface(rng, {**env, x: ty.domain},
                               ty.codomain, depth - 1)
        return Lam(x, ty.domain, body)
    if kind == "app":
        alpha = random_type(rng, 1)
        f = _random_surface(rng, env, Arrow(alpha, ty), depth - 1)
        a = _random_surface(rng, env, alpha, depth - 1)
        return App(f, a)
    f = _random_surface(rng, env, Arrow(ty, ty), depth - 1)
    return App(FixS, f)


class TestCompilerCorrectness:
    def test_against_big_step_oracle(self):
        rng = random.Random(100)
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(30000)
        committed = 0
        try:
            for _ in range(500):
                e = _random_surface(rng, {}, Iota, 4)
                t = elaborate(e)
                assert t.ty is Iota
                want = _oracle(e, 2500)
                if want is None:
                    continue
                committed += 1
                final, _ = run_bounded(t, 20000)
                assert final.numeral == want, term_to_sexp(t)
                den = Interpreter().denote_base(t, 24)
                if den.defined:
                    assert den.value == want, term_to_sexp(t)
        finally:
            sys.setrecursionlimit(old)
        assert committed > 100

    def test_type_preservation_and_sexp_round_trip(self):
        rng = random.Random(101)
        for _ in range(300):
            ty = random_type(rng, 2)
            e = _random_surface(rng, {}, ty, 3)
            assert infer_type(e) is ty
            t = elaborate(e)
            assert t.ty is ty
            assert parse_term_sexp(term_to_sexp(t)) is t


class TestCli:
    def run_cli(self, capsys, *argv):
        code = cli.main(list(argv))
        got = capsys.readouterr()
        return code, got.out, got.err

    def test_check_add(self, capsys):
        code, out, _ = self.run_cli(capsys, "check", str(SAMPLES / "add.pcf"))
        assert (code, out) == (0, "nat\n")

    def test_run_add(self, capsys):
        code, out, _ = self.run_cli(
            capsys, "run", str(SAMPLES / "add.pcf"), "--max-steps", "10000")
        assert (code, out) == (0, "3\n")

    def test_run_omega(self, capsys):
        code, out, _ = self.run_cli(capsys, "run", str(SAMPLES / "omega.pcf"))
        assert (code, out) == (1, "no-numeral\n")

    def test_check_type_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.pcf"
        bad.write_text("zero zero\n")
        code, _, err = self.run_cli(capsys, "check", str(bad))
        assert code == 2 and "type error" in err

    def test_parse_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.pcf"
        bad.write_text("succ (zero\n")
        code, _, err = self.run_cli(capsys, "check", str(bad))
        assert code == 3 and "parse error" in err

    def test_unbound_variable_is_a_parse_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.pcf"
        bad.write_text("x\n")
        code, _, err = self.run_cli(capsys, "run", str(bad))
        assert code == 3 and "unbound" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = self.run_cli(capsys, "run", str(tmp_path / "no.pcf"))
        assert code == 3 and "cannot read" in err

    def test_compile_matches_library(self, capsys, tmp_path):
        src = tmp_path / "id.pcf"
        src.write_text("\\x:nat. x\n")
        code, out, _ = self.run_cli(capsys, "compile", str(src))
        assert code == 0
        assert out.strip() == term_to_sexp(elaborate(parse("\\x:nat. x")))

    def test_step_trace(self, capsys, tmp_path):
        src = tmp_path / "p.pcf"
        src.write_text("pred #1\n")
        code, out, _ = self.run_cli(capsys, "step", str(src))
        assert code == 0
        assert out == "pred-succ ⇝ zero\nnormal-form\n"

    def test_step_budget(self, capsys):
        code, out, _ = self.run_cli(
            capsys, "step", str(SAMPLES / "omega.pcf"), "--max", "3")
        lines = out.splitlines()
        assert code == 0
        assert len(lines) == 4 and lines[-1] == "step-budget-exhausted"
        assert lines[0].startswith("fix ⇝ ")

    def test_denote(self, capsys):
        code, out, _ = self.run_cli(
            capsys, "denote", str(SAMPLES / "add.pcf"), "--fuel", "10")
        assert (code, out) == (0, "eta 3\n")
        code, out, _ = self.run_cli(
            capsys, "denote", str(SAMPLES / "omega.pcf"))
        assert (code, out) == (1, "bot\n")

    def test_adequacy_and_sound(self, capsys):
        for sub in ("adequacy", "sound"):
            code, out, _ = self.run_cli(
                capsys, sub, str(SAMPLES / "add.pcf"), "--fuel", "10")
            assert (code, out) == (0, "ok n=3\n")
            code, out, _ = self.run_cli(
                capsys, sub, str(SAMPLES / "omega.pcf"), "--max-steps", "500")
            assert (code, out) == (0, "vacuous\n")

    def test_eq(self, capsys, tmp_path):
        a = tmp_path / "a.pcf"
        a.write_text("succ #1\n")
        b = tmp_path / "b.pcf"
        b.write_text("#2\n")
        code, out, _ = self.run_cli(capsys, "eq", str(a), str(a))
        assert (code, out) == (0, "equal\n")
        # same sexp once compiled, so equal even from different sources
        code, out, _ = self.run_cli(capsys, "eq", str(a), str(b))
        assert (code, out) == (0, "equal\n")
        code, out, _ = self.run_cli(
            capsys, "eq", str(a), str(SAMPLES / "omega.pcf"))
        assert (code, out) == (1, "distinct\n")

    def test_eq_across_types_is_distinct(self, capsys, tmp_path):
        f = tmp_path / "f.pcf"
        f.write_text("succ\n")
        code, out, _ = self.run_cli(
            capsys, "eq", str(f), str(SAMPLES / "omega.pcf"))
        assert (code, out) == (1, "distinct\n")

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "pcfkit.frontend.cli",
             "run", str(SAMPLES / "add.pcf")],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout == "3\n"
