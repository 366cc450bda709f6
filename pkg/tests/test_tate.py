import pytest

from fpss.numerics import rho, vp
from fpss.specseq import Region, turn_page, well_definedness_check
from fpss.thh.tate import (IE1, IL, IM, IT, IU, hofix_form, hofix_instance,
                           instance_region, module_triples,
                           relabeling_agreement, run_instance, tate_form,
                           tate_instance)

P = 5


def test_module_generator_count():
    assert len(module_triples(P)) == 2 * P


def test_seed_bidegree_examples():
    e2 = tate_form(P, 1, "E2")
    alg = e2.algebra
    # bidegree (-2, 0) holds exactly t
    assert [alg.mono_str(m) for m in e2.basis_at(-2, 0)] == ["t"]
    # bidegree (0, 0) holds the unit
    assert [alg.mono_str(m) for m in e2.basis_at(0, 0)] == ["1"]
    # eps1b sits in (0, 2p-1) together with eps0 mu0^(p-1)? the latter is
    # excluded from the module basis, so only mu2-free classes remain
    names = [alg.mono_str(m) for m in e2.basis_at(0, 2 * P - 1)]
    assert "eps1b" in names and "eps0*mu0^4" not in names


def test_forms_are_duplicate_free():
    for form in (tate_form(P, 2, "odd", 2), hofix_form(P, 2, "even", 1),
                 tate_form(P, 2, "Einf"), hofix_form(P, 2, "Einf")):
        region = Region(-30, 60, -400, 64)
        seen = set()
        for m in form.iter_region(region):
            assert m not in seen
            seen.add(m)
            s, t = form.algebra.bidegree(m)
            assert m in form.basis_at(s, t)


def test_cp_run_small_window():
    results = run_instance(tate_instance(P, 1), -20, 40)
    assert all(c.passed for c in results)
    assert len(results) == 4


def test_runs_at_the_next_prime():
    for maker in (tate_instance, hofix_instance):
        results = run_instance(maker(7, 1), -20, 60)
        assert all(c.passed for c in results)


def test_hofix_run_small_window():
    results = run_instance(hofix_instance(P, 1), -20, 40)
    assert all(c.passed for c in results)


def test_final_page_top_class():
    # total degree 2p-2 of the final page: the residue class t^(-4) and the
    # eps1b lambda2 class one periodicity step up
    einf = tate_form(P, 1, "Einf")
    alg = einf.algebra
    monos = einf.monomials_at_total(2 * P - 2)
    names = sorted(alg.mono_str(m) for m in monos)
    assert names == ["t^-4", "t^25*lambda2*eps1b"]


def test_cpn_einf_block_example():
    # the height 2 final page contains the valuation 2 block truncated at
    # rho(1) = 21
    einf = tate_form(P, 2, "Einf")
    alg = einf.algebra
    sample = [m for m in einf.iter_region(Region(-60, 60, -3000, 64))
              if m[IL] == 0 and m[IU] == 0 and m[IE1] == 0
              and (m[IT] - m[IM]) not in (0,) and m[IM] > 0]
    assert sample
    for m in sample:
        j, c = m[IT] - m[IM], m[IM]
        if j and vp(P, j) == 2:
            assert c < rho(P, 1)


def test_pages_never_grow():
    inst = tate_instance(P, 1)
    region = instance_region(P, 1, -20, 40, "tate")
    forms = inst.forms()
    for before, after in zip(forms, forms[1:]):
        dims_b = {}
        for m in before.iter_region(region):
            bd = before.algebra.bidegree(m)
            dims_b[bd] = dims_b.get(bd, 0) + 1
        for m in after.iter_region(region):
            bd = after.algebra.bidegree(m)
            dims_b[bd] = dims_b.get(bd, 0) - 1
        assert all(v >= 0 for v in dims_b.values())


def test_dd_zero_and_unit_invariance():
    inst = tate_instance(P, 1)
    region = Region(-10, 30, -300, 34)
    st = inst.stages[1]
    base = turn_page(st.before, st.rule, region)
    for unit in (2, 3):
        scaled = turn_page(st.before, st.rule.scaled(unit), region)
        assert {bd: len(v) for bd, v in scaled.table.items()} == \
            {bd: len(v) for bd, v in base.table.items()}


def test_propagation_mode_matches_verification():
    # carry representatives forward through the first two differentials and
    # compare with the closed form, gating each step
    inst = tate_instance(P, 1)
    region = Region(-10, 24, -200, 30)
    page = turn_page(inst.stages[0].before, inst.stages[0].rule, region)
    gate = well_definedness_check(page, inst.stages[1].rule)
    assert gate.passed
    page2 = turn_page(page, inst.stages[1].rule, region, dd_check=True)
    shrunk = page2.region
    closed = inst.stages[1].after
    for (s, t), monos in page2.table.items():
        if shrunk.contains(s, t):
            assert set(monos) == set(closed.basis_at(s, t))


def test_relabeling_agreement():
    ok, problems = relabeling_agreement(P, 1, -20, 40)
    assert ok, problems[:3]


def test_d2_leibniz_example():
    # d2 on eps0 mu0^2 is t mu0^3: one Leibniz step, odd leading factor
    inst = tate_instance(P, 1)
    alg = inst.algebra
    rule = inst.stages[0].rule
    got = rule.apply(alg, alg.mono(eps0=1, mu0=2))
    assert got == {alg.mono(t=1, mu0=3): 1}


def test_unit_bidegree_of_final_page():
    einf = tate_form(P, 1, "Einf")
    assert [einf.algebra.mono_str(m) for m in einf.basis_at(0, 0)] == ["1"]


def test_empty_window_is_vacuous():
    results = run_instance(tate_instance(P, 1), 5, 4)
    assert all(c.passed for c in results)
    assert all(c.bidegrees_checked == 0 for c in results)


def test_verifier_catches_corrupted_rule():
    # a wrong tmu2 increment in the first odd family must be detected
    from fpss.specseq import FamilyRule
    from fpss.specseq import verify_turn

    def bad_odd(alg, m):
        a, J, b, M, d0, i0, e = m
        if e != 1 or d0 or i0:
            return []
        j = J - M - (P - P * P)
        if j == 0 or vp(P, j) != 0:
            return []
        c = M + 2          # correct increment is 1
        return [((a, j + c, b, c, 0, 0, 0), 1)]

    inst = tate_instance(P, 1)
    region = instance_region(P, 1, -20, 40, "tate")
    rule = FamilyRule(2 * rho(P, 1), "bad-odd", bad_odd)
    cmp_ = verify_turn(inst.stages[1].before, rule, inst.stages[1].after,
                       region)
    assert not cmp_.passed


def test_verifier_catches_corrupted_form():
    # an off-by-one truncation in the final page must be detected
    from fpss.specseq import verify_turn
    from fpss.thh.tate import PLAIN, PLAIN_E, Summand, TateForm, tate_ambient

    alg = tate_ambient(P, 1)
    wrong = TateForm("wrong", 52, alg, "tate", (
        Summand((0, 1), (0, 1), PLAIN, 1, ("res",)),
        Summand((0,), (0, 1), PLAIN_E, rho(P, 0) + 2, ("vp_ge", 2)),
    ))
    inst = tate_instance(P, 1)
    region = instance_region(P, 1, -20, 40, "tate")
    st = inst.stages[3]
    cmp_ = verify_turn(st.before, st.rule, wrong, region)
    assert not cmp_.passed


def test_form_at_lookup():
    inst = tate_instance(P, 1)
    assert inst.form_at(2).label.endswith("E2")
    assert inst.form_at(3).label.endswith("E3")
    assert inst.form_at(2 * rho(P, 1)).label.endswith("E3")
    assert inst.form_at(2 * rho(P, 1) + 1).label.endswith("odd:1")
    assert inst.form_at("inf").label.endswith("Einf")
    with pytest.raises(ValueError):
        inst.form_at(1)
