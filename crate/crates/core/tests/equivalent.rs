use holistic_fd::construct::{construct_iterative, ModelSeries, PdeSpec};
use holistic_fd::derivative_to_series;
use holistic_fd::equivalent::{
    consistency_order, consistency_order_at_eps, equivalent_operator, equivalent_pde,
    ConsistencyOrder, DiffOpSeries,
};
use holistic_fd::hpoly::HPoly;
use holistic_fd::presets::{upwind1, upwind2};
use holistic_fd::rational::{int, rat, Rational};
use holistic_fd::stencil::{even_power, odd_power, Stencil, StencilSum};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

/// Power series in `y = h∂`, index = power.
fn series_mul(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j < len {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `δ² = 2(cosh y − 1)` and `μδ = sinh y`.
fn delta_squared(len: usize) -> Vec<Rational> {
    (0..len)
        .map(|n| {
            if n > 0 && n % 2 == 0 {
                int(2) / factorial(n as u32)
            } else {
                Rational::zero()
            }
        })
        .collect()
}

fn mean_delta(len: usize) -> Vec<Rational> {
    (0..len)
        .map(|n| {
            if n % 2 == 1 {
                Rational::one() / factorial(n as u32)
            } else {
                Rational::zero()
            }
        })
        .collect()
}

fn as_diff_op(y_series: &[Rational], max_h: i32) -> DiffOpSeries {
    let mut out = DiffOpSeries::new(max_h);
    for (n, c) in y_series.iter().enumerate() {
        out.add(n as u32, 0, &HPoly::monomial(c.clone(), n as i32));
    }
    out
}

#[test]
fn canonical_powers_expand_as_hyperbolic_series() {
    let max_h = 14;
    let len = max_h as usize + 1;
    let d2 = delta_squared(len);
    let md = mean_delta(len);
    let mut even = vec![Rational::zero(); len];
    even[0] = Rational::one();
    for m in 1..=5 {
        // μδ^{2m−1} = μδ·δ^{2m−2}
        let odd = series_mul(&md, &even, len);
        let got = equivalent_operator(&StencilSum::from(&odd_power(m)), max_h);
        assert_eq!(got, as_diff_op(&odd, max_h), "μδ^{}", 2 * m - 1);
        even = series_mul(&even, &d2, len);
        let got = equivalent_operator(&StencilSum::from(&even_power(m)), max_h);
        assert_eq!(got, as_diff_op(&even, max_h), "δ^{}", 2 * m);
    }
}

#[test]
fn derivative_series_truncation_error() {
    for n in 1..=5u32 {
        for terms in 1..=4usize {
            let series = derivative_to_series(n, terms).unwrap();
            let got = equivalent_operator(&series.to_stencil(), 12);
            let mut target = DiffOpSeries::new(12);
            target.add(n, 0, &HPoly::constant(int(1)));
            let err = got.sub(&target);
            assert_eq!(
                err.lowest_h_power(),
                Some(2 * terms as i32),
                "∂^{n} with {terms} terms"
            );
        }
    }
}

fn advection_diffusion(ell: u32, eps_order: u32) -> ModelSeries {
    construct_iterative(&PdeSpec::advection_diffusion(), ell, eps_order)
        .unwrap()
        .1
}

#[test]
fn low_order_model_matches_second_order_modified_equation() {
    let model = advection_diffusion(2, 10);
    let got = equivalent_pde(&model, 2);
    let mut expected = DiffOpSeries::new(2);
    expected.add(1, 1, &HPoly::constant(int(-1)));
    expected.add(2, 0, &HPoly::constant(int(1)));
    // (h²/12)(ε − ∂)²∂²
    expected.add(2, 2, &HPoly::monomial(rat(1, 12), 2));
    expected.add(3, 1, &HPoly::monomial(rat(-1, 6), 2));
    expected.add(4, 0, &HPoly::monomial(rat(1, 12), 2));
    assert_eq!(got, expected);
}

#[test]
fn second_order_model_matches_fourth_order_modified_equation() {
    let model = advection_diffusion(3, 10);
    let got = equivalent_pde(&model, 4);
    let mut expected = DiffOpSeries::new(4);
    expected.add(1, 1, &HPoly::constant(int(-1)));
    expected.add(2, 0, &HPoly::constant(int(1)));
    // (h⁴/90)(ε − ∂)³∂³
    expected.add(3, 3, &HPoly::monomial(rat(1, 90), 4));
    expected.add(4, 2, &HPoly::monomial(rat(-3, 90), 4));
    expected.add(5, 1, &HPoly::monomial(rat(3, 90), 4));
    expected.add(6, 0, &HPoly::monomial(rat(-1, 90), 4));
    assert_eq!(got, expected);
}

#[test]
fn consistency_orders() {
    let spec = PdeSpec::advection_diffusion();
    assert_eq!(
        consistency_order(&advection_diffusion(2, 4), &spec),
        ConsistencyOrder::Exact(2)
    );
    assert_eq!(
        consistency_order(&advection_diffusion(3, 4), &spec),
        ConsistencyOrder::Exact(4)
    );
    assert_eq!(
        consistency_order_at_eps(&advection_diffusion(3, 4), &spec, 1),
        ConsistencyOrder::Exact(4)
    );
    assert_eq!(
        consistency_order(&upwind2(), &spec),
        ConsistencyOrder::Exact(1)
    );
    // first-order upwinding has no diffusion term at all
    assert_eq!(
        consistency_order(&upwind1(), &spec),
        ConsistencyOrder::Exact(0)
    );
    let pure_advection: PdeSpec = "ut = -eps*ux".parse().unwrap();
    assert_eq!(
        consistency_order(&upwind1(), &pure_advection),
        ConsistencyOrder::Exact(1)
    );
    let diffusion = construct_iterative(&PdeSpec::diffusion(), 4, 1).unwrap().1;
    assert_eq!(
        consistency_order(&diffusion, &PdeSpec::diffusion()),
        ConsistencyOrder::Exact(6)
    );
}

#[test]
fn csv_is_sorted_and_exact() {
    let model = advection_diffusion(2, 3);
    let csv = equivalent_pde(&model, 2).to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("d_order,eps_power,h_power,coefficient"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(
        rows,
        vec![
            "1,1,0,-1",
            "2,0,0,1",
            "2,2,2,1/12",
            "3,1,2,-1/6",
            "4,0,2,1/12"
        ]
    );
}

fn stencil() -> impl Strategy<Value = Stencil> {
    proptest::collection::vec((-3i64..=3, -4i64..=4), 1..5).prop_map(|pairs| {
        let pairs: Vec<(i64, Rational)> = pairs.into_iter().map(|(r, c)| (r, int(c))).collect();
        Stencil::from_pairs(0, &pairs)
    })
}

fn product(a: &DiffOpSeries, b: &DiffOpSeries) -> DiffOpSeries {
    let mut out = DiffOpSeries::new(a.max_h_order());
    for x in a.terms() {
        for y in b.terms() {
            out.add(
                x.d_order + y.d_order,
                x.eps_power + y.eps_power,
                &HPoly::monomial(&x.coeff * &y.coeff, x.h_power + y.h_power),
            );
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn expansion_is_multiplicative(a in stencil(), b in stencil()) {
        let max_h = 8;
        let ea = equivalent_operator(&StencilSum::from(&a), max_h);
        let eb = equivalent_operator(&StencilSum::from(&b), max_h);
        let eab = equivalent_operator(&StencilSum::from(&a.compose(&b)), max_h);
        prop_assert_eq!(eab, product(&ea, &eb));
    }

    #[test]
    fn expansion_reproduces_tap_sum_and_first_moment(a in stencil()) {
        let e = equivalent_operator(&StencilSum::from(&a), 2);
        prop_assert_eq!(e.coeff(0, 0), HPoly::constant(a.tap_sum()));
        let moment: Rational = a.taps().iter().map(|(r, c)| c * int(*r)).sum();
        prop_assert_eq!(e.coeff(1, 0), HPoly::monomial(moment, 1));
    }
}
