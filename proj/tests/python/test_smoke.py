"""Smoke tests for the Python bindings: construction, closed forms, errors,
simulation determinism.  Runs under pytest or directly as a script."""

import math

import contractlab as cl


def market(r=10.0, c=1.0, k=0.0, b=1.0, lam=1.0, delta=None):
    return cl.MarketParams(r=r, c=c, k=k, b=b, lam=lam, delta=delta)


def test_centralized_closed_form():
    sol = cl.centralized_optimum(market(), cl.DemandModel.exponential(1.0, 1.0))
    assert abs(sol.x_star - (1.0 + math.log(10.0))) < 1e-12
    assert sol.pi_star > 0.0


def test_demand_queries():
    d = cl.DemandModel.erlang(2.0, 0.5, 3)
    assert d.kind == "erlang" and d.n == 3
    assert abs(d.mean() - (2.0 + 6.0)) < 1e-12
    assert 0.0 < d.survival(5.0) < 1.0
    assert abs(d.expected_sales(5.0) + d.expected_shortfall(5.0) - d.mean()) < 1e-9


def test_penalty_contract_holds_supplier_to_reservation():
    sol = cl.coordinated_lump_sum(market(), cl.DemandModel.exponential(1.0, 1.0))
    assert abs(sol.supplier_profit) < 1e-9
    assert sol.kind == "lump_sum"
    assert sol.penalty > 0.0


def test_renewal_report():
    p = market(r=11.0, delta=10.0 / 11.0)
    rep = cl.coordinated_renewal_report(p, cl.DemandModel.exponential(1.0, 1.0))
    assert abs(rep.expected_generations - 11.0) < 1e-9
    assert 0.0 < rep.oem_fraction < 1.0


def test_errors_translate():
    try:
        cl.centralized_optimum(market(r=0.5), cl.DemandModel.exponential(1.0, 1.0))
    except cl.NoViableMargin:
        pass
    else:
        raise AssertionError("expected NoViableMargin")
    try:
        cl.figure_data("no_such_figure")
    except cl.UnknownFigure as e:
        assert "eff_wholesale" in str(e)
    else:
        raise AssertionError("expected UnknownFigure")


def test_simulation_reproducible_and_close():
    p = market()
    d = cl.DemandModel.exponential(1.0, 1.0)
    w = 4.0
    x = cl.supplier_best_response_wholesale(p, d, w)
    cfg = cl.SimConfig(seed=42, replications=50000)
    a = cl.estimate_single_gen_profit(p, d, cl.Wholesale(w), x, cfg)
    b = cl.estimate_single_gen_profit(p, d, cl.Wholesale(w), x, cfg)
    assert a.supplier.mean == b.supplier.mean and a.oem.mean == b.oem.mean
    closed = cl.supplier_profit(p, d, w, x)
    assert abs(a.supplier.mean - closed) < 4.0 * a.supplier.std_error


def test_figures_and_factorial():
    assert "coord_price" in cl.figure_ids()
    t = cl.figure_data("coord_price")
    assert t.columns[0] == "margin_ratio" and len(t.rows) > 0
    assert t.to_text().splitlines()[0].startswith("margin_ratio,")
    res = cl.run_factorial()
    assert len(res.cells) == 54 and res.failures == 0
    overall = [s for s in res.summary if s.axis == "overall"]
    assert len(overall) == 1 and overall[0].cells == 54


def test_scenario_round_trip():
    s = cl.parse_scenario_text("r = 10\nc = 1\nk = 0\nb = 1\nlambda = 1\n")
    assert s.market.r == 10.0 and s.demand.kind == "exponential"
    again = cl.parse_scenario_text(cl.render_scenario(s))
    assert again.market.lam == 1.0


if __name__ == "__main__":
    passed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            passed += 1
            print(f"ok {name}")
    print(f"python smoke: {passed} tests passed")
