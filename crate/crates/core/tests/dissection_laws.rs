use parity_forge::dissection::{component, dissect, extract};
use parity_forge::Series;
use proptest::prelude::*;

fn series() -> impl Strategy<Value = Series> {
    (1usize..80).prop_flat_map(|order| {
        prop::collection::vec(-1000i64..1000, order + 1)
            .prop_map(move |v| Series::from_i64s(&v, order).unwrap())
    })
}

proptest! {
    #[test]
    fn components_reassemble(s in series(), m in 1usize..9) {
        let parts = dissect(&s, m).unwrap();
        prop_assert_eq!(parts.len(), m);
        let sum = parts.iter().fold(Series::zero(s.order()), |acc, p| &acc + p);
        prop_assert_eq!(sum, s);
    }

    #[test]
    fn components_have_disjoint_support(s in series(), m in 1usize..9) {
        for (r, part) in dissect(&s, m).unwrap().iter().enumerate() {
            for (n, _) in part.terms() {
                prop_assert_eq!(n % m, r);
            }
        }
    }

    #[test]
    fn extract_then_dilate_recovers_component(s in series(), m in 1usize..9, r in 0usize..9) {
        prop_assume!(r < m && r <= s.order());
        let sub = extract(&s, m, r).unwrap();
        prop_assert_eq!(sub.order(), (s.order() - r) / m);
        // q^r * sub(q^m) is the residue-r component.
        let spread = sub.dilate_to(m, s.order() - r).unwrap();
        let comp = component(&s, m, r).unwrap();
        prop_assert!(comp.coeffs()[..r].iter().all(|c| *c == 0.into()));
        prop_assert_eq!(&comp.coeffs()[r..], spread.coeffs());
    }

    #[test]
    fn extract_of_dilation_is_identity(s in series(), m in 1usize..6) {
        let d = s.dilate_to(m, s.order() * m).unwrap();
        prop_assert_eq!(extract(&d, m, 0).unwrap(), s.clone());
        for r in 1..m {
            prop_assert!(extract(&d, m, r).unwrap().is_zero());
        }
    }

    #[test]
    fn nested_extraction_composes(s in series(), r1 in 0usize..3, r2 in 0usize..3) {
        prop_assume!(r1 + 3 * r2 <= s.order());
        let Ok(inner) = extract(&s, 3, r1) else { return Ok(()) };
        prop_assume!(r2 <= inner.order());
        let twice = extract(&inner, 3, r2).unwrap();
        let once = extract(&s, 9, r1 + 3 * r2).unwrap();
        prop_assert_eq!(twice, once);
    }
}
