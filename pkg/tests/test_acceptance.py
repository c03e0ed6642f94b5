"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import io
import json
import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from math import gcd
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
import oracles  # noqa: E402

from sha_predict.abelian import AbelianGroupStructure  # noqa: E402
from sha_predict.arith import QuadIrrational, is_square, quad  # noqa: E402
from sha_predict.cli import run  # noqa: E402
from sha_predict.config import LmfdbConfig  # noqa: E402
from sha_predict.latmac import (MonicIntPolynomial, ideal_class_matrices,  # noqa: E402
                                matrices_with_charpoly, similar_over_Z, similarity_partition)
from sha_predict.lmfdb import CurveRecord, LmfdbClient, compare_report  # noqa: E402
from sha_predict.minkowski import (is_dyadic, question_mark, question_mark_partial,  # noqa: E402
                                   question_mark_quad, scale_embedding)
from sha_predict.orders import QuadOrder, class_number_order, split_discriminant  # noqa: E402
from sha_predict.qforms import class_number_definite, class_numbers_indefinite  # noqa: E402
from sha_predict.sha import (companion_Fr, companion_L, declared_charpoly, functor_map,  # noqa: E402
                             functor_map_inverse, sha_cm_curve, sha_from_class_group,
                             two_adic_valuation)

FIXTURE_CACHE = Path(__file__).parent / "fixtures" / "lmfdb" / "cache"


@contextmanager
def criterion(number: int, title: str, limit: float, emit=print):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        emit(f"[FAIL] criterion {number}: {title} ({elapsed:.2f}s) {exc}")
        raise
    emit(f"[PASS] criterion {number}: {title} ({elapsed:.2f}s, limit {limit:g}s)")


def cli_json(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([*argv, "--json"], stdout=out, stderr=err)
    assert code == 0, err.getvalue()
    return out.getvalue()


# -- 1 ----------------------------------------------------------------------

def check_cm_examples(emit=print):
    for D in (3, 7):
        with criterion(1, f"sha-cm --D {D} --f 1 reports trivial Sha", 1.0, emit):
            env = json.loads(cli_json("sha-cm", "--D", str(D), "--f", "1"))
            assert env["result"]["sha"]["order"] == "1"
            assert env["result"]["sha"]["result"]["divisors"] == []


# -- 2 ----------------------------------------------------------------------

def divisor_chains(limit: int, least: int = 2, prev: int = 1, prod: int = 1):
    """Every chain d1 | d2 | ... (d_i >= 2) with product <= limit, yielded as tuples."""
    yield ()
    # next divisor is a multiple of prev, at least `least`, and keeps the product in range
    d = max(least, prev)
    d += (-d) % prev
    while prod * d <= limit:
        for rest in divisor_chains(limit, d, d, prod * d):
            yield (d, *rest)
        d += prev


def check_sha_assembly(emit=print):
    with criterion(2, "Sha assembly over all groups with cyclic 2-part, |G| <= 10^4", 10.0, emit):
        n = 0
        for chain in divisor_chains(10**4):
            if sum(d % 2 == 0 for d in chain) > 1:
                continue
            G = AbelianGroupStructure(chain)
            p = sha_from_class_group(G)
            h = G.order
            k = two_adic_valuation(h) if h > 1 else 0
            odd = h >> k
            expected = h * h if k % 2 == 0 else 2**k * odd * odd
            assert p.order == expected, (chain, p.order, expected)
            assert is_square(p.order) == (k % 2 == 0), chain
            n += 1
        assert n > 10**4


# -- 3 ----------------------------------------------------------------------

def reduced_form_counts(X: int) -> list[int]:
    """counts[n] = number of primitive reduced forms of discriminant -n, n <= X,
    found by sweeping all (a, b, c) with |b| <= a <= c."""
    counts = [0] * (X + 1)
    a = 1
    while 3 * a * a <= X:
        for b in range(-a + 1, a + 1):
            g = gcd(a, b)
            bb = b * b
            for c in range(a if b >= 0 else a + 1, (X + bb) // (4 * a) + 1):
                if g == 1 or gcd(g, c) == 1:
                    counts[4 * a * c - bb] += 1
        a += 1
    return counts


def check_class_numbers(emit=print):
    with criterion(3, "conductor formula = reduced-form counts (|D| <= 10^5 neg, D <= 10^4 pos)",
                   300.0, emit):
        X = 10**5
        direct = reduced_form_counts(X)
        h_max: dict[int, int] = {}
        checked = 0
        for n in range(3, X + 1):
            disc = -n
            if disc % 4 not in (0, 1):
                continue
            d_K, f = split_discriminant(disc)
            if d_K not in h_max:
                h_max[d_K] = class_number_definite(d_K)
            h = class_number_order(QuadOrder(d_K, f), h_maximal=h_max[d_K])
            assert h == direct[n], (disc, h, direct[n])
            checked += 1
        for disc in range(5, 10**4 + 1):
            if disc % 4 not in (0, 1) or is_square(disc):
                continue
            d_K, f = split_discriminant(disc)
            if d_K not in h_max:
                h_max[d_K] = class_numbers_indefinite(d_K)[1]
            h = class_number_order(QuadOrder(d_K, f), h_maximal=h_max[d_K])
            assert h == class_numbers_indefinite(disc)[1], disc
            checked += 1
        assert checked > 50000


# -- 4 ----------------------------------------------------------------------

def check_latimer_macduffee(emit=print):
    with criterion(4, "bounded similarity classes = ideal classes for disc 5, 12, 13, 40",
                   120.0, emit):
        for disc in (5, 12, 13, 40):
            poly = MonicIntPolynomial.for_discriminant(disc)
            cells = similarity_partition(matrices_with_charpoly(poly, 6), 10)
            reps = ideal_class_matrices(poly)
            h = class_numbers_indefinite(disc)[1]
            assert len(cells) == len(reps) == h, (disc, len(cells), len(reps), h)
            for m in reps:
                assert oracles.charpoly_cofactor(m.rows) == (1, poly.c1, poly.c0)
            # each representative lands in its own cell
            hits = sorted(next(i for i, cell in enumerate(cells)
                               if similar_over_Z(cell[0], m, 10) is not None) for m in reps)
            assert hits == list(range(len(cells)))


# -- 5 ----------------------------------------------------------------------

def random_unit_quads(rng: random.Random, count: int):
    out = []
    while len(out) < count:
        D = rng.randint(2, 500)
        if is_square(D):
            continue
        x = quad(rng.randint(-400, 400), rng.choice([-1, 1]) * rng.randint(1, 20),
                 rng.randint(1, 60), D)
        if isinstance(x, QuadIrrational) and 0 < x < 1:
            out.append(x)
    return out


def check_minkowski(emit=print):
    with criterion(5, "Minkowski ?: exact values, monotonicity, dyadic dichotomy", 30.0, emit):
        for x, image in ((QuadIrrational(-1, 1, 1, 2), Fraction(2, 5)),
                         (QuadIrrational(-1, 1, 2, 5), Fraction(2, 3))):
            assert question_mark_quad(x) == image
            assert abs(question_mark_partial(x, 64) - image) < Fraction(1, 2**60)
        farey = sorted({Fraction(p, q) for q in range(1, 65) for p in range(q + 1)})
        images = [question_mark(r) for r in farey]
        assert all(u < v for u, v in zip(images, images[1:]))
        assert all(is_dyadic(y) for y in images)
        for x in random_unit_quads(random.Random(20240601), 200):
            y = question_mark_quad(x)
            assert not is_dyadic(y), x
            for r, yr in zip(farey, images):
                assert (x < r) == (y < yr), (x, r)


# -- 6 ----------------------------------------------------------------------

def check_companions(emit=print):
    with criterion(6, "companion matrices: declared char polys and functor round trip", 10.0, emit):
        rng = random.Random(7)
        primes = [p for p in range(2, 200) if oracles.is_prime(p)]
        for _ in range(50):
            n = rng.choice([1, 2])
            a = [rng.randint(-50, 50) for _ in range(2 * n - 1)]
            p = rng.choice(primes)
            L, Fr = companion_L(a, p), companion_Fr(a, p)
            assert oracles.charpoly_cofactor(L.rows) == declared_charpoly(a, p, "L")
            assert oracles.charpoly_cofactor(Fr.rows) == declared_charpoly(a, p, "Fr")
            assert functor_map(Fr) == L and functor_map_inverse(L) == Fr
            assert functor_map(functor_map_inverse(L)) == L


# -- 7 ----------------------------------------------------------------------

def check_scale(emit=print):
    with criterion(7, "scale embedding of sqrt2-1 for N <= 5", 5.0, emit):
        theta = QuadIrrational(-1, 1, 1, 2)
        for N in range(1, 6):
            pts = scale_embedding(theta, N)
            values = [v for _, v, _ in pts]
            images = [y for _, _, y in pts]
            assert values[0] == 0 and values[-1] == 1
            assert images[0] == 0 and images[-1] == 1
            assert all(u < v for u, v in zip(images, images[1:]))
            assert all(not is_dyadic(y) for y in images[1:-1])


# -- 8 ----------------------------------------------------------------------

def check_lmfdb(emit=print):
    with criterion(8, "offline LMFDB comparison is deterministic and reports mismatches", 5.0, emit):
        args = ("lmfdb-compare", "--D-list", "3,7,23", "--offline",
                "--cache-dir", str(FIXTURE_CACHE), "--conductor-bound", "100")
        first, second = cli_json(*args), cli_json(*args)
        assert first == second
        env = json.loads(first)
        rows = env["result"]["rows"]
        assert [r["D"] for r in rows] == sorted((r["D"] for r in rows), key=int)
        assert env["result"]["summary"]["unknown"] == "1"

        def no_network(url):
            raise AssertionError(f"network access attempted: {url}")
        client = LmfdbClient(LmfdbConfig(cache_dir=FIXTURE_CACHE), transport=no_network,
                             offline=True)
        records = client.fetch({"cm": -3}) + client.fetch({"cm": -7})
        # a disagreeing record is kept as a "no" row rather than raising
        records.append(CurveRecord("illustrative.1", -7, 4, "local", "2026-01-01T00:00:00+00:00"))
        preds = [sha_cm_curve(3), sha_cm_curve(7)]
        report = compare_report(preds, records)
        assert report == compare_report(preds, list(reversed(records)))
        assert report.summary["no"] == 1
        assert any(r.label == "illustrative.1" and r.match == "no" for r in report.rows)


CHECKS = [check_cm_examples, check_sha_assembly, check_class_numbers,
          check_latimer_macduffee, check_minkowski, check_companions, check_scale, check_lmfdb]


@pytest.mark.parametrize("check", CHECKS, ids=lambda c: c.__name__.removeprefix("check_"))
def test_criterion(check, capsys):
    def emit(line):
        with capsys.disabled():
            print("\n" + line)
    check(emit)


if __name__ == "__main__":
    failed = 0
    for check in CHECKS:
        try:
            check()
        except Exception:  # the FAIL line was already printed
            failed += 1
    sys.exit(1 if failed else 0)
