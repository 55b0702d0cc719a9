use farey_core::algebra::rational::{int, to_f64};
use farey_core::algebra::BigRational;
use farey_core::cf::{evaluate_label_exact, expand_exact};
use farey_core::density::{prepend_digit, run_density, DensityConfig};
use farey_core::dynamics::{farey_step, gauss_step, slow_branch, SlowBranch};
use farey_core::roots::{complex_roots, interlacing_verdict, isolate_real_roots, refine};
use farey_core::tree::{vertex_from_label, TreeVariant, VertexLabel};
use proptest::prelude::*;

fn canonical_digits() -> impl Strategy<Value = Vec<u64>> {
    (prop::collection::vec(1u64..6, 0..5), 2u64..6).prop_map(|(mut d, last)| {
        d.push(last);
        d
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn label_value_expands_back_to_label(digits in canonical_digits(), x in 1i64..5) {
        let x = int(x);
        let label = VertexLabel::new(digits.clone()).unwrap();
        let v = vertex_from_label(&label, TreeVariant::Forward).unwrap();
        let value = v.eval(&x).unwrap();
        prop_assert_eq!(&value, &evaluate_label_exact(&digits, &x, TreeVariant::Forward).unwrap());
        let e = expand_exact(&value, &x, TreeVariant::Forward, 100).unwrap();
        prop_assert!(e.is_finite());
        prop_assert_eq!(e.digits, digits);
    }

    #[test]
    fn prepending_a_digit_is_one_fast_step(digits in canonical_digits(), b in 1u64..6, x in 1i64..4) {
        // The fast map strips the leading digit: T([b, v]) = v.
        let x = int(x);
        let v = vertex_from_label(&VertexLabel::new(digits).unwrap(), TreeVariant::Forward).unwrap();
        let w = prepend_digit(&v, b).unwrap();
        let (digit, image) = gauss_step(&w.eval(&x).unwrap(), &x, TreeVariant::Forward).unwrap();
        prop_assert_eq!(digit, b);
        prop_assert_eq!(image, v.eval(&x).unwrap());
    }

    #[test]
    fn vertex_roots_are_all_real(digits in canonical_digits()) {
        // Sturm counts and the simultaneous complex iteration agree that
        // numerator and denominator split over the reals.
        let v = vertex_from_label(&VertexLabel::new(digits).unwrap(), TreeVariant::Forward).unwrap();
        prop_assert!(interlacing_verdict(&v).unwrap().passed());
        for f in [v.p(), v.q()] {
            let real = isolate_real_roots(f).unwrap();
            let approx = complex_roots(f, 1e-10).unwrap();
            prop_assert_eq!(real.len(), approx.len());
            for (iv, z) in real.iter().zip({
                let mut zs: Vec<f64> = approx.iter().map(|z| z.re).collect();
                zs.sort_by(f64::total_cmp);
                zs
            }) {
                let r = refine(iv, &BigRational::new(1.into(), 1_000_000_000.into())).unwrap().approx();
                prop_assert!((r - z).abs() < 1e-6, "{} vs {}", r, z);
            }
            prop_assert!(approx.iter().all(|z| z.im.abs() < 1e-6));
        }
    }
}

#[test]
fn slow_map_reaches_fast_image_through_its_branches() {
    let x = BigRational::new(5.into(), 2.into());
    let t = BigRational::new(3.into(), 29.into());
    let (digit, image) = gauss_step(&t, &x, TreeVariant::Forward).unwrap();
    let mut s = t.clone();
    let mut ones = 0;
    loop {
        let branch = slow_branch(&s, &x, TreeVariant::Forward);
        s = farey_step(&s, &x, TreeVariant::Forward).unwrap();
        if branch == SlowBranch::Zero {
            break;
        }
        ones += 1;
    }
    assert_eq!(ones + 1, digit);
    assert_eq!(s, image);
}

#[test]
fn density_path_ends_near_target_pole() {
    let alpha = BigRational::new((-7).into(), 3.into());
    let start = VertexLabel::new(vec![2, 2]).unwrap();
    let trace = run_density(&start, &alpha, &DensityConfig::new(200, BigRational::new(1.into(), 100_000_000.into()))).unwrap();
    assert!(trace.passed());
    let last = trace.steps.last().unwrap();
    assert!(last.zeta < to_f64(&alpha));
    assert!(to_f64(&alpha) - last.zeta < 1e-8);
}
