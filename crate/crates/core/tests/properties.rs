//! Property tests for the structural invariants of each module.

use std::sync::OnceLock;

use num_rational::BigRational;
use proptest::prelude::*;

use fplct::bracket::{ATensor, BracketContext};
use fplct::combinat::{catalan, contains, Basis, Diagram, LinkPattern};
use fplct::fpl::{enumerate, path_trace, square_lattice, FplConfig, SquareLattice};
use fplct::polyring::MultiPoly;
use fplct::symfun::{hook_content_poly, lr_coefficient, ssyt_contents};
use fplct::tlmodel::e_matrix;

type Q = BigRational;

fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// A basis element of size `1..=max_n`, chosen by an index reduced modulo the basis length.
fn diagram(max_n: usize) -> impl Strategy<Value = Diagram> {
    (1..=max_n, any::<usize>()).prop_map(|(n, k)| {
        let b = Basis::new(n);
        b.get(k % b.len()).clone()
    })
}

/// Three diagrams of a common size.
fn triple(max_n: usize) -> impl Strategy<Value = (Diagram, Diagram, Diagram)> {
    (1..=max_n, any::<[usize; 3]>()).prop_map(|(n, ks)| {
        let b = Basis::new(n);
        let pick = |k: usize| b.get(k % b.len()).clone();
        (pick(ks[0]), pick(ks[1]), pick(ks[2]))
    })
}

proptest! {
    #[test]
    fn link_pattern_round_trip(d in diagram(7)) {
        let pi = d.to_link_pattern();
        prop_assert_eq!(Diagram::from_link_pattern(&pi), d.clone());
        prop_assert_eq!(d.transpose().transpose(), d.clone());
        prop_assert_eq!(pi.mirror().mirror(), pi.clone());
        let mut r = pi.clone();
        for _ in 0..pi.points() {
            r = r.rotate();
        }
        prop_assert_eq!(r, pi);
    }

    #[test]
    fn inclusion_is_a_partial_order((a, b, c) in triple(6)) {
        prop_assert!(contains(&a, &a).unwrap());
        if contains(&a, &b).unwrap() && contains(&b, &a).unwrap() {
            prop_assert_eq!(&a, &b);
        }
        if contains(&a, &b).unwrap() && contains(&b, &c).unwrap() {
            prop_assert!(contains(&a, &c).unwrap());
        }
        let n = a.n();
        prop_assert!(contains(&Diagram::empty(n), &a).unwrap());
        prop_assert!(contains(&a, &Diagram::staircase(n)).unwrap());
    }

    #[test]
    fn embedding_preserves_order_and_size((a, b, _) in triple(5), m in 0usize..4) {
        let (ea, eb) = (a.embed(m), b.embed(m));
        prop_assert_eq!(ea.boxes(), a.boxes());
        prop_assert_eq!(ea == eb, a == b);
        prop_assert_eq!(contains(&ea, &eb).unwrap(), contains(&a, &b).unwrap());
        prop_assert_eq!(ea.unembed(m), Some(a.clone()));
    }

    #[test]
    fn transpose_reverses_inclusion((a, b, _) in triple(6)) {
        prop_assert_eq!(a.transpose().boxes(), a.boxes());
        prop_assert_eq!(
            contains(&a, &b).unwrap(),
            contains(&a.transpose(), &b.transpose()).unwrap()
        );
    }
}

#[test]
fn basis_sizes_are_catalan() {
    for n in 1..=7 {
        assert_eq!(Basis::new(n).len(), catalan(n));
    }
    assert_eq!(catalan(7), 429);
}

/// A polynomial in three variables with small exponents and coefficients.
fn poly() -> impl Strategy<Value = MultiPoly<Q>> {
    prop::collection::vec((prop::array::uniform3(0u32..4), -5i64..=5), 0..6)
        .prop_map(|terms| MultiPoly::from_terms(3, terms.into_iter().map(|(e, c)| (e.to_vec(), q(c)))))
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(ab.clone(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            ab.add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.mul(&MultiPoly::one(3)).unwrap(), a.clone());
    }

    #[test]
    fn truncated_product_drops_only_over_cap_terms(
        a in poly(),
        b in poly(),
        caps in prop::array::uniform3(0u32..7),
    ) {
        let full = a.mul(&b).unwrap().with_caps(caps.to_vec());
        let capped = a.clone().with_caps(caps.to_vec()).mul(&b.clone().with_caps(caps.to_vec())).unwrap();
        prop_assert_eq!(capped, full);
    }

    #[test]
    fn coefficients_are_convolutions(a in poly(), b in poly(), e in prop::array::uniform3(0i64..7)) {
        let mut naive = q(0);
        for (ea, ca) in a.terms() {
            for (eb, cb) in b.terms() {
                if (0..3).all(|i| (ea[i] + eb[i]) as i64 == e[i]) {
                    naive += ca * cb;
                }
            }
        }
        prop_assert_eq!(a.mul(&b).unwrap().coefficient_of(&e).unwrap(), naive);
    }

    #[test]
    fn hook_content_counts_tableaux(d in diagram(4), m in 1usize..=4) {
        let count = ssyt_contents(&d.partition(), m).len() as i64;
        prop_assert_eq!(hook_content_poly(&d, &q(m as i64)), q(count));
    }

    #[test]
    fn temperley_lieb_relations(n in 1usize..=5, i in 0usize..10) {
        let basis = Basis::new(n);
        let i = 1 + i % (2 * n);
        let e = e_matrix::<Q>(i, &basis).unwrap();
        prop_assert_eq!(e.mul(&e), e.clone());
        if n >= 2 {
            let j = i % (2 * n) + 1;
            let f = e_matrix::<Q>(j, &basis).unwrap();
            prop_assert_eq!(e.mul(&f).mul(&e), e.clone());
            prop_assert_eq!(f.mul(&e).mul(&f), f);
        }
    }
}

fn tensor(n: usize) -> &'static ATensor<Q> {
    static CELLS: [OnceLock<ATensor<Q>>; 5] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CELLS[n].get_or_init(|| BracketContext::new(n, q(1)).a_tensor())
}

proptest! {
    #[test]
    fn tensor_support_and_lowest_degree((s, a, t) in triple(4)) {
        let value = tensor(s.n()).get(&s, &a, &t).clone();
        let inside = contains(&t, &a).unwrap() && contains(&s.transpose(), &a).unwrap();
        if !inside || s.boxes() + t.boxes() > a.boxes() {
            prop_assert_eq!(value, q(0));
        } else if s.boxes() + t.boxes() == a.boxes() {
            let lr = lr_coefficient(&s.transpose(), &t, &a);
            prop_assert_eq!(value, Q::from_integer(lr));
        }
    }
}

/// Every valid configuration of the `n × n` square, listed once per size.
fn square_configurations(n: usize) -> &'static (SquareLattice, Vec<Vec<bool>>) {
    static CELLS: [OnceLock<(SquareLattice, Vec<Vec<bool>>)>; 6] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    CELLS[n].get_or_init(|| {
        let sq = square_lattice(n);
        let mut all: Vec<Vec<bool>> = enumerate(&sq.lattice, |cfg| Ok(Some(cfg.occupied.clone())))
            .unwrap()
            .into_keys()
            .collect();
        all.sort();
        (sq, all)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]
    #[test]
    fn traced_paths_never_cross(n in 1usize..=5, k in any::<usize>()) {
        let (sq, all) = square_configurations(n);
        let cfg = FplConfig::new(&sq.lattice, all[k % all.len()].clone()).unwrap();
        let paths = path_trace(&cfg).unwrap();
        let terminals: Vec<usize> = sq.terminals().collect();
        let label = |s: usize| terminals.iter().position(|&x| x == s).expect("ends on a terminal");
        let partner: Vec<usize> = terminals.iter().map(|s| label(paths[s])).collect();
        prop_assert!(LinkPattern::new(partner).is_ok());
    }
}

#[test]
fn configuration_lists_have_asm_sizes() {
    for (n, asm) in [(1, 1), (2, 2), (3, 7), (4, 42), (5, 429)] {
        assert_eq!(square_configurations(n).1.len(), asm);
    }
}
