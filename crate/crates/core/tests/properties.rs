use drtomo_core::hardness::{lift_image, lift_instance};
use drtomo_core::oracle::{oracle_count, oracle_solve, SearchBudget};
use drtomo_core::solver::properize;
use drtomo_core::switches::{
    applicable_moves, apply_switch, find_switch, reduce, reduce_by_strips, reduce_counted, tv,
    tv_descend, Direction,
};
use drtomo_core::{
    make_exact_instance, perturb_instance, solve_dr, verify_solution, BinaryImage, Instance,
};
use proptest::prelude::*;

/// Images with even sides up to `2 * max_half`.
fn image(max_half: usize) -> impl Strategy<Value = BinaryImage> {
    (1..=max_half, 1..=max_half).prop_flat_map(|(hw, hh)| {
        let (w, h) = (2 * hw, 2 * hh);
        prop::collection::vec(any::<bool>(), w * h)
            .prop_map(move |bits| BinaryImage::from_fn(w, h, |p, q| bits[(q - 1) * w + p - 1]))
    })
}

fn satisfied(inst: &Instance, img: &BinaryImage) -> bool {
    verify_solution(inst, img).unwrap().satisfied
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn properize_is_an_involution(img in image(5)) {
        let inst = make_exact_instance(&img, 2).unwrap();
        let (proper, perm) = properize(&inst);
        prop_assert_eq!(perm.apply_to_instance(&proper), inst.clone());
        prop_assert!(satisfied(&proper, &perm.apply_to_image(&img)));
        prop_assert!(proper.row_sums.chunks(2).all(|p| p[0] >= p[1]));
        prop_assert!(proper.col_sums.chunks(2).all(|p| p[0] >= p[1]));
    }

    #[test]
    fn solver_output_verifies(img in image(6)) {
        let inst = make_exact_instance(&img, 2).unwrap();
        let sol = solve_dr(&inst).unwrap();
        prop_assert!(sol.is_some_and(|s| satisfied(&inst, &s)));
    }

    #[test]
    fn switches_preserve_every_constraint(img in image(4)) {
        let inst = make_exact_instance(&img, 2).unwrap();
        for d in [Direction::Forward, Direction::Reversed] {
            for mv in applicable_moves(&img, d) {
                let out = apply_switch(&img, &mv).unwrap();
                prop_assert!(satisfied(&inst, &out), "{}", mv);
            }
        }
    }

    #[test]
    fn reduce_is_idempotent_and_bounded(img in image(6)) {
        let inst = make_exact_instance(&img, 2).unwrap();
        let (once, steps) = reduce_counted(&img);
        prop_assert_eq!(reduce(&once), once.clone());
        prop_assert!(satisfied(&inst, &once));
        let blocks = img.width() * img.height() / 4;
        prop_assert!(steps <= 4 * blocks);
    }

    #[test]
    fn strip_reduction_is_reduced(img in image(8)) {
        let inst = make_exact_instance(&img, 2).unwrap();
        let (out, steps) = reduce_by_strips(&img);
        prop_assert!(find_switch(&out, Direction::Forward).is_none());
        prop_assert!(satisfied(&inst, &out));
        prop_assert!(steps <= 4 * img.width() * img.height() / 4);
        prop_assert_eq!(reduce_by_strips(&out).1, 0);
    }

    #[test]
    fn solver_output_is_reduced(img in image(8)) {
        let inst = make_exact_instance(&img, 2).unwrap();
        let out = solve_dr(&inst).unwrap().unwrap();
        prop_assert!(find_switch(&out, Direction::Forward).is_none());
    }

    #[test]
    fn descent_never_increases_tv(img in image(5)) {
        let inst = make_exact_instance(&img, 2).unwrap();
        let d = tv_descend(&inst, &img).unwrap();
        prop_assert!(d.trace.windows(2).all(|w| w[1] < w[0]));
        prop_assert!(tv(&d.image) <= tv(&img));
        prop_assert!(satisfied(&inst, &d.image));
    }

    #[test]
    fn perturbed_instances_still_admit_the_truth(
        img in image(5),
        eps in 1u32..=2,
        fraction in 0.0f64..=1.0,
        seed in any::<u64>(),
    ) {
        let mut inst = make_exact_instance(&img, 2).unwrap();
        inst.epsilon = eps;
        let a = perturb_instance(&inst, fraction, seed);
        prop_assert_eq!(&a, &perturb_instance(&inst, fraction, seed));
        prop_assert!(satisfied(&a, &img));
        let expected = ((fraction * inst.block_count() as f64).ceil() as usize).min(inst.block_count());
        prop_assert_eq!(a.reliable.iter().filter(|r| !**r).count(), expected);
    }

    #[test]
    fn oracle_solutions_verify(img in image(3)) {
        let inst = make_exact_instance(&img, 2).unwrap();
        let o = oracle_solve(&inst, SearchBudget::default());
        prop_assert!(o.exhausted);
        prop_assert!(o.result.contains(&img));
        prop_assert!(o.result.iter().all(|s| satisfied(&inst, s)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn lifting_preserves_solution_counts(img in image(2), k in prop::sample::select(vec![3usize, 4, 6])) {
        let inst = make_exact_instance(&img, 2).unwrap();
        let lifted = lift_instance(&inst, k).unwrap();
        prop_assert!(satisfied(&lifted, &lift_image(&img, k)));
        let a = oracle_count(&inst, SearchBudget::default());
        let b = oracle_count(&lifted, SearchBudget::default());
        prop_assert!(a.exhausted && b.exhausted);
        prop_assert_eq!(a.result, b.result);
    }
}
