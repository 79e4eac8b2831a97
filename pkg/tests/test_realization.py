import json
from fractions import Fraction
from pathlib import Path

import pytest

from qwbench.lie import RootSystem
from qwbench.realization import check_invariants, realize

from oracles import cayley_data

FIXTURE = json.loads((Path(__file__).parent / "fixtures" / "cayley_constants.json").read_text())


def frac_matrix(m):
    return [[Fraction(x) for x in row] for row in m]


def all_cases():
    for kind in ("A", "B"):
        rs = RootSystem(kind, 2)
        for w in rs.elements():
            yield rs, w.word()
    a3 = RootSystem("A", 3)
    yield a3, a3.coxeter_word()


def test_carter_examples():
    a2 = RootSystem("A", 2)
    R = realize(a2, (0, 1))
    assert (R.gamma1, R.gamma2) == ([(1, 0)], [(0, 1)])
    e = realize(a2, ())
    assert (e.gamma1, e.gamma2, e.l_prime) == ([], [], 0)
    a1 = realize(RootSystem("A", 1), (0,))
    assert (a1.gamma1, a1.gamma2) == ([(1,)], [])
    assert a1.c == [[0]]


def test_segment_examples():
    a1 = realize(RootSystem("A", 1), (0,))
    assert a1.m_plus == [(1,)] and a1.dimm() == 1
    a2 = realize(RootSystem("A", 2), (0, 1))
    assert len(a2.m_plus) == 3 and a2.D0 == 0
    s1 = realize(RootSystem("A", 2), (0,))
    assert len(s1.m_plus) == s1.dimm() == 3 - (Fraction(1 - 1, 2) + 0)


def test_a2_coxeter_constants_fixture():
    R = realize(RootSystem("A", 2), (0, 1))
    assert R.c == [[0, 1], [-1, 0]]
    assert R.n == [[0, Fraction(1, 2)], [Fraction(-1, 2), 0]]
    entry = next(f for f in FIXTURE if f["type"] == "A" and f["rank"] == 2 and f["s"] == [1, 2])
    assert frac_matrix(entry["c"]) == R.c and frac_matrix(entry["n"]) == R.n


@pytest.mark.parametrize("entry", FIXTURE, ids=lambda f: f"{f['type']}{f['rank']}-{f['s']}")
def test_constants_match_frozen_oracle(entry):
    rs = RootSystem(entry["type"], entry["rank"])
    R = realize(rs, tuple(i - 1 for i in entry["s"]))
    assert [i + 1 for i in R.working_word] == entry["working"]
    assert R.c == frac_matrix(entry["c"])
    assert R.n == frac_matrix(entry["n"])
    assert R.cayley.p == frac_matrix(entry["p"])
    assert R.d == entry["d"]


def test_fixture_reproduced_by_oracle():
    for entry in FIXTURE[:8]:
        rs = RootSystem(entry["type"], entry["rank"])
        c, nm, p, d = cayley_data(rs, tuple(i - 1 for i in entry["working"]))
        assert [[str(x) for x in row] for row in c.tolist()] == entry["c"]
        assert d == entry["d"]


@pytest.mark.parametrize("rs,word", list(all_cases()), ids=lambda x: str(x))
def test_invariants_every_element(rs, word):
    R = realize(rs, word)
    inv = check_invariants(R)
    assert all(inv.values()), {k: v for k, v in inv.items() if not v}
    assert len(R.m_plus) == R.dimm()
    n = rs.rank
    assert all(R.c[i][j] == -R.c[j][i] for i in range(n) for j in range(n))


def test_simple_flag_and_dump():
    R = realize(RootSystem("A", 2), (0, 1))
    assert R.simple_flag
    dump = R.dump()
    assert dump["c"] == [["0", "1"], ["-1", "0"]]
    assert dump["m_plus"] == [list(b) for b in R.m_plus]
    json.dumps(dump)


def test_explicit_w0_word():
    rs = RootSystem("A", 2)
    R = realize(rs, (0, 1), w0_word=(0, 1, 0))
    assert R.w0_word == (0, 1, 0) and R.ordering == [(1, 0), (1, 1), (0, 1)]
