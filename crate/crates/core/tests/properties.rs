use num_traits::Zero;
use poisson_core::algebra::{combine, groebner_basis, PolyMatrix, Submodule};
use poisson_core::construct::logf_classify;
use poisson_core::groupoid::LinearGroupoidModel;
use poisson_core::pipeline::{parse_input, BivectorEntry, InputDoc, Mode};
use poisson_core::poisson::{check_jacobi, koszul_bracket, library, PoissonStructure};
use poisson_core::poly::{Chart, Monomial, Polynomial};
use poisson_core::scalar::{int, rat};
use poisson_core::trace::trace_leaf;
use poisson_core::{QForm, QMultivector, QPolynomial, Rational};
use proptest::prelude::*;

const N: usize = 3;

fn chart() -> Chart {
    Chart::new(["x", "y", "z"])
}

fn poly_strategy(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = QPolynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), -4i64..=4), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(
            n,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_exponents(e), int(c))),
        )
    })
}

fn subsets(n: usize, grade: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = vec![vec![]];
    for i in 0..n {
        let more: Vec<_> = all
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.push(i);
                t
            })
            .collect();
        all.extend(more);
    }
    all.retain(|s| s.len() == grade);
    all
}

fn multivector_strategy(grade: usize) -> impl Strategy<Value = QMultivector> {
    let slots = subsets(N, grade);
    prop::collection::vec(poly_strategy(N, 2, 2), slots.len()).prop_map(move |coeffs| {
        let mut m = QMultivector::zero(&chart(), grade);
        for (s, c) in slots.iter().zip(coeffs) {
            m.add_component(s, c);
        }
        m
    })
}

fn graded() -> impl Strategy<Value = (usize, QMultivector)> {
    (0..=N).prop_flat_map(|g| multivector_strategy(g).prop_map(move |m| (g, m)))
}

fn form_strategy(grade: usize) -> impl Strategy<Value = QForm> {
    let slots = subsets(N, grade);
    prop::collection::vec(poly_strategy(N, 2, 2), slots.len()).prop_map(move |coeffs| {
        let mut m = QForm::zero(&chart(), grade);
        for (s, c) in slots.iter().zip(coeffs) {
            m.add_component(s, c);
        }
        m
    })
}

fn graded_form() -> impl Strategy<Value = (usize, QForm)> {
    (0..=N).prop_flat_map(|g| form_strategy(g).prop_map(move |w| (g, w)))
}

fn point_strategy(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-6i64..=6, 1i64..=3), n).prop_map(|v| v.into_iter().map(|(a, b)| rat(a, b)).collect())
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `Σ c_i T_i = 0`, dropping zero terms so formal grade −1 brackets are skipped.
fn vanishes(terms: &[(i64, QMultivector)]) -> bool {
    let mut acc: Option<QMultivector> = None;
    for (c, t) in terms.iter().filter(|(_, t)| !t.is_zero()) {
        let t = t.scale(&Polynomial::constant(N, int(*c)));
        acc = Some(match acc {
            None => t,
            Some(a) if a.grade() == t.grade() => a.add(&t).unwrap(),
            Some(_) => return false,
        });
    }
    acc.is_none_or(|a| a.is_zero())
}

fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, |r| r.len());
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone() / pivot.clone();
                let pivot_row = rows[rank].clone();
                for (x, p) in rows[r].iter_mut().zip(pivot_row) {
                    *x = x.clone() - p * f.clone();
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `f ∂x∧∂y` is Poisson on `R³` for every `f`.
fn planar_structure(f: &QPolynomial) -> PoissonStructure {
    let mut pi = QMultivector::zero(&chart(), 2);
    pi.add_component(&[0, 1], f.clone());
    PoissonStructure::new(pi).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn schouten_graded_antisymmetry((p, a) in graded(), (q, b) in graded()) {
        let ab = a.schouten(&b).unwrap();
        let ba = b.schouten(&a).unwrap();
        prop_assert!(vanishes(&[(1, ab), (sign((p + 1) * (q + 1)), ba)]));
    }

    #[test]
    fn schouten_graded_leibniz((p, a) in graded(), (q, b) in graded(), (_r, c) in graded()) {
        let lhs = a.schouten(&b.wedge(&c).unwrap()).unwrap();
        let t1 = a.schouten(&b).unwrap().wedge(&c).unwrap();
        let t2 = b.wedge(&a.schouten(&c).unwrap()).unwrap();
        prop_assert!(vanishes(&[(1, lhs), (-1, t1), (-sign((p + 1) * q), t2)]));
    }

    #[test]
    fn schouten_graded_jacobi((p, a) in graded(), (q, b) in graded(), (r, c) in graded()) {
        let t1 = a.schouten(&b.schouten(&c).unwrap()).unwrap();
        let t2 = b.schouten(&c.schouten(&a).unwrap()).unwrap();
        let t3 = c.schouten(&a.schouten(&b).unwrap()).unwrap();
        prop_assert!(vanishes(&[
            (sign((p + 1) * (r + 1)), t1),
            (sign((q + 1) * (p + 1)), t2),
            (sign((r + 1) * (q + 1)), t3),
        ]));
    }

    #[test]
    fn vector_field_on_function_is_derivative(x in multivector_strategy(1), f in poly_strategy(N, 3, 4)) {
        let fm = QMultivector::function(&chart(), f.clone());
        let br = x.schouten(&fm).unwrap();
        prop_assert_eq!(br.component(&[]), x.apply(&f));
    }

    #[test]
    fn evaluation_commutes_with_wedge(a in multivector_strategy(1), b in multivector_strategy(2), x in point_strategy(N)) {
        let lhs = a.wedge(&b).unwrap().evaluate_at(&x).unwrap();
        let (ea, eb) = (a.evaluate_at(&x).unwrap(), b.evaluate_at(&x).unwrap());
        // ε_{012} (a∧b)_{012} = a_0 b_12 − a_1 b_02 + a_2 b_01
        let expect = ea.component(&[0]) * eb.component(&[1, 2]) - ea.component(&[1]) * eb.component(&[0, 2])
            + ea.component(&[2]) * eb.component(&[0, 1]);
        prop_assert_eq!(lhs.component(&[0, 1, 2]), expect);
    }

    #[test]
    fn cartan_formula(x in multivector_strategy(1), (g, w) in graded_form()) {
        let lie = w.lie_derivative(&x).unwrap();
        let d_i = w.interior_product(&x).unwrap().exterior_derivative();
        let i_d = w.exterior_derivative().interior_product(&x).unwrap();
        let cartan = if g == 0 { i_d } else { d_i.add(&i_d).unwrap() };
        prop_assert_eq!(lie, cartan);
    }

    #[test]
    fn lie_derivative_commutator_with_contraction(x in multivector_strategy(1), y in multivector_strategy(1), w in form_strategy(2)) {
        // L_X ι_Y − ι_Y L_X = ι_[X,Y]
        let lhs = w.interior_product(&y).unwrap().lie_derivative(&x).unwrap()
            .sub(&w.lie_derivative(&x).unwrap().interior_product(&y).unwrap()).unwrap();
        let rhs = w.interior_product(&x.schouten(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn koszul_bracket_of_exact_forms(f in poly_strategy(N, 2, 3), a in poly_strategy(N, 2, 3), b in poly_strategy(N, 2, 3)) {
        let pi = planar_structure(&f);
        let c = chart();
        let br = koszul_bracket(pi.bivector(), &QForm::differential(&c, &a), &QForm::differential(&c, &b)).unwrap();
        prop_assert_eq!(br, QForm::differential(&c, &pi.bracket(&a, &b)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn groebner_basis_is_deterministic(gens in prop::collection::vec(poly_strategy(N, 2, 3), 1..=3)) {
        let vecs: Vec<Vec<QPolynomial>> = gens.iter().map(|g| vec![g.clone()]).collect();
        prop_assert_eq!(groebner_basis(&vecs), groebner_basis(&vecs));
        let a = Submodule::new(N, 1, vecs.clone());
        let b = Submodule::new(N, 1, vecs);
        prop_assert_eq!(a.groebner_basis(), b.groebner_basis());
    }

    #[test]
    fn syzygies_are_relations(cols in prop::collection::vec(prop::collection::vec(poly_strategy(N, 1, 2), 2), 1..=3)) {
        let m = Submodule::new(N, 2, cols.clone());
        for s in m.syzygies().generators() {
            let zero = combine(N, 2, &cols, s);
            prop_assert!(zero.iter().all(|p| p.is_zero()));
        }
    }

    #[test]
    fn membership_certificates_recombine(
        gens in prop::collection::vec(prop::collection::vec(poly_strategy(N, 1, 2), 2), 1..=3),
        coeffs in prop::collection::vec(poly_strategy(N, 1, 2), 3),
    ) {
        let m = Submodule::new(N, 2, gens.clone());
        let v = combine(N, 2, &gens, &coeffs[..gens.len()]);
        let cert = m.membership(&v).yes();
        prop_assert!(cert.is_some());
        prop_assert_eq!(combine(N, 2, &gens, &cert.unwrap()), v);
    }

    #[test]
    fn saturation_contains_module(gens in prop::collection::vec(poly_strategy(N, 1, 2), 1..=2), f in poly_strategy(N, 1, 2)) {
        prop_assume!(!f.is_zero());
        let m = Submodule::ideal(N, gens.iter().cloned());
        let i = Submodule::ideal(N, [f.clone()]);
        let sat = m.saturate(&i).unwrap();
        prop_assert!(sat.module.contains_module(&m));
        // every generator v satisfies f^k v ∈ M
        let fk = f.pow(sat.exponent as u32);
        for v in sat.module.generators() {
            prop_assert!(m.contains(&[&v[0] * &fk]));
        }
    }

    #[test]
    fn rank_profile_matches_exact_rank(entries in prop::collection::vec(poly_strategy(N, 1, 2), 6), x in point_strategy(N)) {
        let m = PolyMatrix::from_fn(N, 2, 3, |i, j| entries[3 * i + j].clone());
        let profile = m.rank_profile();
        let rows: Vec<Vec<Rational>> = (0..2).map(|i| (0..3).map(|j| entries[3 * i + j].eval(&x)).collect()).collect();
        prop_assert_eq!(profile.rank_at(&x), rational_rank(rows));
        prop_assert!(profile.rank_at(&x) <= profile.generic_rank);
    }

    #[test]
    fn isotropy_generators_annihilate(f in poly_strategy(N, 2, 3), x in point_strategy(N)) {
        prop_assume!(!f.is_zero());
        let pi = planar_structure(&f);
        let iso = pi.germinal_isotropy();
        for a in iso.generators() {
            prop_assert!(pi.sharp(&a).unwrap().is_zero());
        }
        let p = pi.bivector().evaluate_at(&x).unwrap().to_matrix();
        for v in iso.basis_at(&x) {
            for j in 0..N {
                let s = (0..N).fold(int(0), |acc, i| acc + v[i].clone() * p[(i, j)].clone());
                prop_assert!(s.is_zero());
            }
        }
        if !f.eval(&x).is_zero() {
            prop_assert_eq!(iso.dim_at(&x), N - 2 * pi.k());
        }
    }

    #[test]
    fn almost_regular_distribution_verifies(f in poly_strategy(N, 2, 2)) {
        prop_assume!(!f.is_zero());
        let pi = planar_structure(&f);
        let search = Default::default();
        if let Some(ar) = pi.almost_regular_decide(&search).yes() {
            prop_assert!(pi.verify_distribution(&ar.distribution, &search).all_yes());
        }
    }

    #[test]
    fn z_sing_contains_z(f in poly_strategy(N, 2, 3), x in point_strategy(N)) {
        prop_assume!(!f.is_zero());
        let pi = planar_structure(&f);
        let lf = logf_classify(&pi, &Default::default());
        if !lf.z_ideal.is_empty() {
            let zs = Submodule::ideal(N, lf.z_sing_ideal.iter().cloned());
            for g in &lf.z_ideal {
                prop_assert!(zs.contains(std::slice::from_ref(g)));
            }
        }
        if let Some(g) = &lf.g {
            if !f.eval(&x).is_zero() {
                prop_assert!(!g.eval(&x).is_zero());
            }
        }
    }

    #[test]
    fn casimir_scaling_keeps_jacobi(c in poly_strategy(1, 3, 3)) {
        prop_assume!(!c.is_zero());
        // Casimirs of su(2)* include every function of r²
        let pi = PoissonStructure::new(library::su2().linear_bivector()).unwrap();
        let r2 = pi.chart().parse("x1^2 + x2^2 + x3^2").unwrap();
        let f = c.compose(&[r2]);
        prop_assert!(pi.is_casimir(&f));
        let scaled = pi.bivector().scale(&f);
        prop_assert!(check_jacobi(&scaled).unwrap().is_yes());
    }

    #[test]
    fn groupoid_axioms_hold(seed in any::<u64>(), which in 0usize..3) {
        let t = Chart::new(["t"]);
        let f = t.parse(["t", "1", "t^2 - 1"][which]).unwrap();
        let m = LinearGroupoidModel::standard(2, f).unwrap();
        prop_assert!(m.check_axioms(20, seed).passed());
    }

    #[test]
    fn omega_is_nondegenerate(a in -20i64..=20, b in 1i64..=7) {
        let f = Chart::new(["t"]).parse("t^2 - 2*t").unwrap();
        let m = LinearGroupoidModel::standard(2, f).unwrap();
        let om = m.omega_form(&rat(a, b));
        prop_assert!(!om.determinant.is_zero());
    }

    #[test]
    fn input_round_trip(coeffs in prop::collection::vec(poly_strategy(N, 2, 3), 3)) {
        let c = chart();
        let doc = InputDoc {
            coordinates: vec!["x".into(), "y".into(), "z".into()],
            mode: Mode::Bivector,
            bivector: [(0, 1), (0, 2), (1, 2)]
                .iter()
                .zip(&coeffs)
                .map(|(&(i, j), p)| BivectorEntry { i, j, coeff: c.render(p) })
                .collect(),
            structure_constants: vec![],
            declared_distribution: None,
        };
        let canon = doc.canonical().unwrap();
        let again = parse_input(&canon.to_json()).unwrap();
        prop_assert_eq!(&again, &canon);
        prop_assert_eq!(again.canonical().unwrap(), canon.clone());
        prop_assert_eq!(again.bivector().unwrap(), doc.bivector().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn trace_conserves_casimirs(x in prop::collection::vec(-2.0f64..2.0, 3)) {
        prop_assume!(x.iter().map(|v| v * v).sum::<f64>() > 0.1);
        let pi = PoissonStructure::new(library::su2().linear_bivector()).unwrap();
        let tr = trace_leaf(&pi, &x, &[], 2000, 1e-3).unwrap();
        for c in pi.casimirs(4).iter().filter(|c| !c.is_constant()) {
            prop_assert!(tr.max_relative_drift(c) < 1e-6);
        }
        prop_assert_eq!(tr.dimension, 2);
    }
}
