mod common;

use common::*;
use frelat_core::approx::{diagnose, diagnose_with_threshold, is_feasible_consistent_set};
use frelat_core::context::{build_concept_lattice_with, consistency_report};
use frelat_core::{
    approximate_by_reduct, build_concept_lattice, enumerate_reducts, find_feasible_reducts,
    inf_compose, is_consistent, is_feasible_reduct, pessimistic_approximation, sup_compose, Error,
    ExhaustiveScan, FuzzySet, Matrix,
};

fn levels(m: &Matrix) -> Vec<u32> {
    m.levels().to_vec()
}

#[test]
fn possibility_and_necessity_on_the_squares_context() {
    let fre = solvable_squares();
    let ctx = fre.associated_context();
    assert_eq!(ctx.possibility(&set(&[0, 0, 0, 7, 0])).unwrap(), set(&[2, 4, 0, 2, 0]));
    assert_eq!(ctx.possibility(&set(&[0; 5])).unwrap(), set(&[0; 5]));
    assert_eq!(ctx.necessity(&set(&[2, 4, 0, 2, 0])).unwrap(), set(&[0, 0, 0, 7, 0]));
    assert_eq!(ctx.necessity(&set(&[8; 5])).unwrap(), set(&[8; 5]));
    assert_eq!(ctx.necessity(&set(&[4, 7, 3, 5, 1])).unwrap(), set(&[1, 4, 8, 8, 4]));
    assert_eq!(
        ctx.attribute_interior(&set(&[4, 7, 3, 5, 1])).unwrap(),
        set(&[2, 5, 1, 2, 1])
    );
}

#[test]
fn restricted_lattice_has_forty_concepts() {
    let fre = solvable_squares();
    let ctx = fre.associated_context();
    let restricted = ctx.restrict(&[0, 1, 2]).unwrap();
    assert_eq!(
        restricted.relation().to_rows(),
        vec![vec![6, 4, 0, 4, 4], vec![4, 2, 2, 6, 8], vec![6, 4, 1, 0, 3]]
    );
    let small = build_concept_lattice(&restricted);
    assert_eq!(small.len(), 40);
    let full = build_concept_lattice(ctx);
    let small_extents: Vec<_> = small.extents().cloned().collect();
    let full_extents: Vec<_> = full.extents().cloned().collect();
    assert_eq!(small_extents, full_extents);
    for extent in full.extents() {
        assert_eq!(&ctx.object_closure(extent).unwrap(), extent);
    }
    let target = set(&[0, 0, 0, 7, 0]);
    assert_eq!(small.predecessors(&target).unwrap(), vec![set(&[0, 0, 0, 5, 0])]);
    assert_eq!(full.predecessors(&target).unwrap(), vec![set(&[0, 0, 0, 5, 0])]);
}

#[test]
fn exhaustive_strategy_reproduces_the_lattice() {
    let fre = solvable_squares();
    let restricted = fre.associated_context().restrict(&[1, 2, 3]).unwrap();
    assert_eq!(
        build_concept_lattice_with(&restricted, &ExhaustiveScan),
        build_concept_lattice(&restricted)
    );
}

#[test]
fn consistency_and_reducts_of_the_squares_context() {
    let fre = solvable_squares();
    let ctx = fre.associated_context();
    assert!(is_consistent(ctx, &[0, 1, 2]).unwrap());
    assert!(is_consistent(ctx, &[0, 1, 2, 3, 4]).unwrap());
    assert!(!is_consistent(ctx, &[2, 3]).unwrap());
    let report = consistency_report(ctx, &[2, 3]).unwrap();
    assert!(!report.missing.is_empty());
    assert!(report.extra.is_empty());
    assert_eq!(enumerate_reducts(ctx), vec![vec![0, 1, 2], vec![1, 2, 3]]);
    assert_eq!(ctx.attribute_indices(&["u3", "u4"]), Some(vec![2, 3]));
    assert_eq!(ctx.attribute_indices(&["u9"]), None);
}

#[test]
fn compositions_on_worked_systems() {
    let fre = solvable_squares();
    let frame = fre.frame();
    let x = col(&[0, 0, 0, 7, 0]);
    assert_eq!(sup_compose(frame, fre.coefficients(), &x, fre.sigma()).unwrap(), *fre.rhs());
    assert_eq!(inf_compose(frame, fre.rhs(), fre.coefficients(), fre.sigma()).unwrap(), x);
    let ones = col(&[8; 5]);
    assert_eq!(inf_compose(frame, &ones, fre.coefficients(), fre.sigma()).unwrap(), ones);

    let mm = max_min();
    let top = col(&[8, 3, 3, 3, 3]);
    assert_eq!(
        levels(&sup_compose(mm.frame(), mm.coefficients(), &top, mm.sigma()).unwrap()),
        vec![4, 3, 3, 3, 4]
    );
}

#[test]
fn associated_context_reads_back_the_coefficients() {
    let fre = solvable_squares();
    let ctx = fre.associated_context();
    assert_eq!(ctx.relation(), &squares_coefficients());
    assert_eq!(ctx.attributes().len(), 5);
    assert_eq!(ctx.sigma_at(3, 2), 1);
    assert_eq!(ctx.sigma_at(0, 3), 0);
}

#[test]
fn solvability_of_the_three_systems() {
    let fre = solvable_squares();
    assert!(fre.is_solvable());
    assert!(fre.is_solution(&col(&[0, 0, 0, 6, 0])).unwrap());
    assert!(!fre.is_solution(&col(&[0, 0, 0, 5, 0])).unwrap());
    assert_eq!(fre.max_solution().unwrap(), col(&[0, 0, 0, 7, 0]));

    let broken = unsolvable_squares();
    assert!(!broken.is_solvable());
    match broken.max_solution() {
        Err(Error::Unsolvable(gaps)) => {
            assert_eq!(gaps.len(), 1);
            assert_eq!(
                gaps[0].entries,
                vec![(0, 4, 2), (1, 7, 5), (2, 3, 1), (3, 5, 2)]
            );
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(broken.brute_force_solutions(1 << 20).unwrap().is_empty());

    let mm = max_min();
    assert!(mm.is_solvable());
    assert_eq!(mm.max_solution().unwrap(), col(&[8, 3, 3, 3, 3]));
}

#[test]
fn solution_sets_of_the_squares_system() {
    let fre = solvable_squares();
    let expected = vec![col(&[0, 0, 0, 6, 0]), col(&[0, 0, 0, 7, 0])];
    let set = fre.enumerate_solutions(true).unwrap();
    assert_eq!(set.count(), 2);
    assert_eq!(set.matrices().unwrap(), expected);
    assert_eq!(set.parts[0].excluded_predecessors, vec![common::set(&[0, 0, 0, 5, 0])]);
    assert_eq!(fre.brute_force_solutions(1 << 20).unwrap(), expected);

    let reduced = fre.reduce(&[0, 1, 2], true).unwrap();
    assert_eq!(reduced.enumerate_solutions(true).unwrap().matrices().unwrap(), expected);
}

#[test]
fn inconsistent_reduction_admits_spurious_solutions() {
    let fre = solvable_squares();
    assert_eq!(
        fre.reduce(&[2, 3], true),
        Err(Error::Inconsistent { subset: vec![2, 3] })
    );
    let loose = fre.reduce(&[2, 3], false).unwrap();
    let solutions = loose.enumerate_solutions(true).unwrap().matrices().unwrap();
    let fourth: Vec<u32> = solutions.iter().map(|x| x.level(3, 0)).collect();
    assert_eq!(fourth, vec![5, 6, 7, 8]);
    assert!(solutions.iter().all(|x| x.levels().iter().enumerate().all(|(i, &k)| i == 3 || k == 0)));
    let spurious = solutions
        .iter()
        .filter(|x| !fre.is_solution(x).unwrap())
        .count();
    assert_eq!(spurious, 2);
    assert_eq!(fre.reduce(&[0, 1, 2, 3, 4], true).unwrap(), fre);
}

#[test]
fn max_min_system_solutions_and_reducts() {
    let fre = max_min();
    assert_eq!(
        enumerate_reducts(fre.associated_context()),
        vec![vec![0, 1, 2], vec![0, 2, 3]]
    );
    let set = fre.enumerate_solutions(true).unwrap();
    assert_eq!(set.count(), 875);
    assert_eq!(set.matrices().unwrap().len(), 875);
    let minimal: Vec<Vec<u32>> = set.parts[0]
        .minimal_solutions()
        .into_iter()
        .map(FuzzySet::into_levels)
        .collect();
    assert_eq!(
        minimal,
        vec![
            vec![4, 0, 0, 0, 3],
            vec![4, 0, 0, 3, 0],
            vec![4, 0, 3, 0, 0],
            vec![4, 3, 0, 0, 0],
        ]
    );
    assert_eq!(fre.brute_force_solutions(1 << 20).unwrap().len(), 875);
}

#[test]
fn off_grid_coefficient_neighbours_agree() {
    let low = max_min_with(5);
    let high = max_min_with(6);
    assert_eq!(
        enumerate_reducts(low.associated_context()),
        enumerate_reducts(high.associated_context())
    );
    let (a, b) = (
        low.enumerate_solutions(true).unwrap(),
        high.enumerate_solutions(true).unwrap(),
    );
    assert_eq!(a.matrices(), b.matrices());
    assert_eq!(a.parts[0].minimal_solutions(), b.parts[0].minimal_solutions());
}

#[test]
fn feasible_reducts_of_the_unsolvable_system() {
    let fre = unsolvable_squares();
    assert!(is_feasible_reduct(&fre, &[0, 1, 2]).unwrap());
    assert!(!is_feasible_reduct(&fre, &[1, 2, 3]).unwrap());
    assert_eq!(
        is_feasible_reduct(&fre, &[0, 1]),
        Err(Error::NotAReduct { subset: vec![0, 1] })
    );
    assert_eq!(find_feasible_reducts(&fre), vec![vec![0, 1, 2]]);
    assert!(is_feasible_consistent_set(&fre, &[0, 1, 2]).unwrap());
    // adding the inaccurate fifth equation back makes the subsystem unsolvable
    assert!(!is_feasible_consistent_set(&fre, &[0, 1, 2, 4]).unwrap());
    assert!(matches!(
        is_feasible_consistent_set(&fre, &[2, 3]),
        Err(Error::Inconsistent { .. })
    ));

    let ctx = fre.associated_context();
    let y1 = ctx.restrict(&[0, 1, 2]).unwrap();
    assert_eq!(y1.necessity(&set(&[4, 7, 3])).unwrap(), set(&[5, 8, 8, 8, 7]));
    let y2 = ctx.restrict(&[1, 2, 3]).unwrap();
    assert_eq!(y2.attribute_interior(&set(&[7, 3, 5])).unwrap(), set(&[7, 3, 4]));
}

#[test]
fn reduct_repair_of_the_unsolvable_system() {
    let fre = unsolvable_squares();
    let result = approximate_by_reduct(&fre, &[0, 1, 2]).unwrap();
    assert_eq!(result.t_star, col(&[4, 7, 3, 4, 4]));
    assert_eq!(result.modified_rows, vec![(3, 0, 5, 4), (4, 0, 1, 4)]);
    assert_eq!(result.preserved_rows(), &[0, 1, 2]);
    let summary = &result.solution_summary;
    assert_eq!(summary.max_solution(), col(&[5, 8, 8, 8, 7]));
    assert_eq!(
        summary.parts[0].minimal_solutions(),
        vec![set(&[0, 0, 0, 0, 7])]
    );
    assert_eq!(
        approximate_by_reduct(&fre, &[1, 2, 3]),
        Err(Error::Infeasible { subset: vec![1, 2, 3] })
    );

    let repaired = fre.with_rhs(result.t_star.clone()).unwrap();
    assert!(repaired.is_solvable());
    assert_eq!(repaired.max_solution().unwrap(), col(&[5, 8, 8, 8, 7]));
}

#[test]
fn repaired_system_solution_count() {
    // box (5,8,8,8,7] minus the down-set of its single predecessor
    // (5,8,8,8,6): 6·9·9·9·1 vectors
    let fre = unsolvable_squares();
    let result = approximate_by_reduct(&fre, &[0, 1, 2]).unwrap();
    assert_eq!(result.solution_summary.count(), 4374);
    assert_eq!(
        result.solution_summary.parts[0].excluded_predecessors,
        vec![set(&[5, 8, 8, 8, 6])]
    );
    let repaired = fre.with_rhs(result.t_star).unwrap();
    assert_eq!(repaired.brute_force_solutions(1 << 20).unwrap().len(), 4374);
}

#[test]
fn pessimistic_repair_stays_below() {
    let fre = unsolvable_squares();
    let lowered = pessimistic_approximation(&fre);
    assert_eq!(lowered, col(&[2, 5, 1, 2, 1]));
    assert!(lowered.is_subset_of(fre.rhs()));
    assert!(fre.with_rhs(lowered.clone()).unwrap().is_solvable());
    let t_star = approximate_by_reduct(&fre, &[0, 1, 2]).unwrap().t_star;
    assert!(t_star.level(4, 0) > fre.rhs().level(4, 0));
    let solvable = solvable_squares();
    assert_eq!(pessimistic_approximation(&solvable), *solvable.rhs());
}

#[test]
fn diagnosis_flags_the_fifth_equation() {
    let fre = unsolvable_squares();
    let report = diagnose(&fre);
    assert!(!report.solvable);
    assert_eq!(report.repairs.len(), 1);
    assert_eq!(report.infeasible_reducts, vec![vec![1, 2, 3]]);
    let repair = &report.repairs[0];
    let largest = repair.largest().unwrap();
    assert_eq!((largest.row, largest.steps, largest.notable), (4, 3, true));
    let slight = repair.deviations.iter().find(|d| d.row == 3).unwrap();
    assert_eq!((slight.steps, slight.notable), (1, false));
    let text = report.to_string();
    assert!(text.contains("u5 [w1]: 0.125 -> 0.5 (3 steps)"), "{text}");
    assert!(text.contains("notably inaccurate"));
    assert!(text.contains("slightly imprecise"));

    let strict = diagnose_with_threshold(&fre, 0);
    assert!(strict.repairs[0].deviations.iter().all(|d| d.notable));
}
