//! Small worked examples for every module, through the public API only.

use pperfect::fpbialg::{
    check_axioms, colimit_along_frobenius, frobenius, grouplikes, is_weakly_primitive, polynomial_bialgebra,
    trivial_bialgebra, verify_phi_formula, Element,
};
use pperfect::group::{symmetric, FiniteGroup};
use pperfect::homology::{assemble_fin_bialgebra, aw_coproduct, induced_map, kunneth_product, HomologyBasis};
use pperfect::monoid::{
    fiber_product, group_completion, invert_p, is_locally_monogenic, is_zero_isolated, localize_at_element,
    pi0_pullback_check, AffineMonoid, CommMonoid, FiniteCommMonoid, LocalizedMonoid, MonoidElement, MonoidHom,
};
use pperfect::perm::{PermGroup, Permutation};
use pperfect::structure::{canonical_rho, search_rho, verify_rho_action, verify_rho_group, GModule};
use pperfect::telescope::{AbelianVerdict, DirectSystem, TelescopeElement};
use pperfect::Error;

fn perm(images: &[usize]) -> Permutation {
    Permutation::new(images.to_vec()).unwrap()
}

fn cycles(n: usize, c: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, c).unwrap()
}

fn affine(rank: usize, gens: &[&[i64]]) -> CommMonoid {
    CommMonoid::Affine(AffineMonoid::new(rank, gens.iter().map(|g| g.to_vec()).collect()).unwrap())
}

mod permutations {
    use super::*;

    #[test]
    fn cycle_decompositions() {
        let id = Permutation::identity(5);
        assert!(id.cycles().is_empty());
        assert_eq!(id.fixed_points().len(), 5);

        let t = perm(&[0, 4, 1, 5, 2, 6, 3, 7]);
        assert_eq!(t.to_string(), "(1 4 2)(3 5 6)");
        assert_eq!(t.fixed_points(), vec![0, 7]);
        assert_eq!(perm(&[1, 0]).to_string(), "(0 1)");
    }

    #[test]
    fn signs() {
        assert_eq!(Permutation::identity(4).sign(), 1);
        assert_eq!(perm(&[1, 0]).sign(), -1);
        assert_eq!(Permutation::grid_transpose(2, 4).unwrap().sign(), 1);
    }

    #[test]
    fn block_embeddings() {
        let swap = perm(&[1, 0]);
        assert_eq!(swap.block_diagonal_embed(2).unwrap(), cycles(4, &[&[0, 1], &[2, 3]]));
        assert_eq!(
            Permutation::identity(3).block_diagonal_embed(5).unwrap(),
            Permutation::identity(15)
        );
        let three = cycles(3, &[&[0, 1, 2]]);
        assert_eq!(
            three.block_diagonal_embed(2).unwrap(),
            cycles(6, &[&[0, 1, 2], &[3, 4, 5]])
        );
    }

    #[test]
    fn grid_transposes() {
        assert!(Permutation::grid_transpose(1, 6).unwrap().is_identity());
        let t = Permutation::grid_transpose(3, 9).unwrap();
        assert_eq!(t.degree(), 27);
        assert!(t.cycle_type().lengths.iter().all(|&l| l == 3));
        assert_eq!(t.sign(), 1);
    }

    #[test]
    fn roots() {
        let id = Permutation::identity(4).pth_root(3).unwrap();
        assert!(id.exists);
        assert!(!perm(&[1, 0]).pth_root(2).unwrap().exists);
        let double = cycles(4, &[&[0, 1], &[2, 3]]);
        let r = double.pth_root(2).unwrap();
        assert_eq!(r.witness.unwrap().pow(2), double);
    }

    #[test]
    fn conjugacy() {
        assert!(cycles(4, &[&[0, 1]]).are_conjugate(&cycles(4, &[&[2, 3]])).unwrap());
        assert!(!cycles(3, &[&[0, 1]]).are_conjugate(&cycles(3, &[&[0, 1, 2]])).unwrap());
        let p = cycles(5, &[&[0, 3, 1]]);
        assert!(p.are_conjugate(&p).unwrap());
    }

    #[test]
    fn generated_groups() {
        assert_eq!(
            PermGroup::generate(2, vec![perm(&[1, 0])], 100).unwrap().order(),
            Some(2)
        );
        let s3 = PermGroup::generate(3, vec![perm(&[1, 0, 2]), cycles(3, &[&[0, 1, 2]])], 100).unwrap();
        assert_eq!(s3.order(), Some(6));
        // These two generate a copy of Σ_3 of order 6.
        let big = PermGroup::generate(5, vec![cycles(5, &[&[0, 1, 2]]), cycles(5, &[&[0, 1], &[3, 4]])], 5);
        assert!(matches!(big, Err(Error::TooLarge { .. })));
    }

    #[test]
    fn derived_series_and_cores() {
        let a5 = PermGroup::alternating(5, 100).unwrap();
        let series = a5.derived_series().unwrap();
        assert!(series.iter().all(|g| g.order() == Some(60)));
        assert_eq!(a5.perfect_core().unwrap().order(), Some(60));
        assert!(!a5.is_hypoabelian().unwrap());

        let cyclic = PermGroup::generate(4, vec![cycles(4, &[&[0, 1, 2, 3]])], 100).unwrap();
        let orders: Vec<_> = cyclic
            .derived_series()
            .unwrap()
            .iter()
            .map(|g| g.order().unwrap())
            .collect();
        assert_eq!(orders, vec![4, 1]);
    }
}

mod telescopes {
    use super::*;

    #[test]
    fn stabilization() {
        let tower = DirectSystem::symmetric_tower(2).unwrap();
        let swap = TelescopeElement::new(1, perm(&[1, 0]));
        assert_eq!(tower.stabilize(&swap, 2).unwrap().value, cycles(4, &[&[0, 1], &[2, 3]]));
        assert_eq!(tower.stabilize(&swap, 1).unwrap(), swap);
        let top = tower.stabilize(&swap, 3).unwrap();
        assert_eq!(top.value, cycles(8, &[&[0, 1], &[2, 3], &[4, 5], &[6, 7]]));
        assert!(tower.colimit_equal(&swap, &top).unwrap());
    }

    #[test]
    fn colimit_equality() {
        let tower = DirectSystem::symmetric_tower(2).unwrap();
        let a = TelescopeElement::new(1, perm(&[1, 0]));
        let b = TelescopeElement::new(2, cycles(4, &[&[0, 1]]));
        assert!(!tower.colimit_equal(&a, &b).unwrap());
        let e1 = TelescopeElement::new(1, Permutation::identity(2));
        let e3 = TelescopeElement::new(3, Permutation::identity(8));
        assert!(tower.colimit_equal(&e1, &e3).unwrap());
    }

    #[test]
    fn abelianness() {
        let witness = |p: usize, level: usize| match DirectSystem::symmetric_tower(p).unwrap().abelianness_probe(level)
        {
            Ok(AbelianVerdict::NonAbelian { level, left, right }) => (level, left.value, right.value),
            other => panic!("expected a witness, got {other:?}"),
        };
        let (level, l, r) = witness(2, 2);
        assert_eq!((level, l, r), (2, cycles(4, &[&[0, 1]]), cycles(4, &[&[1, 2]])));
        let (level, l, r) = witness(3, 1);
        assert_eq!((level, l, r), (1, cycles(3, &[&[0, 1]]), cycles(3, &[&[1, 2]])));

        let z2 = DirectSystem::constant(2, vec![perm(&[1, 0])]).unwrap();
        assert!(matches!(
            z2.abelianness_probe(4).unwrap(),
            AbelianVerdict::AbelianUpTo { max_level: 4 }
        ));
    }

    #[test]
    fn divisibility() {
        let tower = DirectSystem::symmetric_tower(2).unwrap();
        let swap = TelescopeElement::new(1, perm(&[1, 0]));
        let rows = tower.divisibility_probe(&swap, 2, 3).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.has_root).collect::<Vec<_>>(),
            vec![false, true, true]
        );
        let w = rows[1].witness.clone().unwrap();
        assert_eq!(w.pow(2), cycles(4, &[&[0, 1], &[2, 3]]));

        let id = TelescopeElement::new(1, Permutation::identity(2));
        assert!(tower.divisibility_probe(&id, 5, 3).unwrap().iter().all(|r| r.has_root));
    }

    #[test]
    fn three_cycle_in_the_three_tower() {
        let tower = DirectSystem::symmetric_tower(3).unwrap();
        let c = TelescopeElement::new(1, cycles(3, &[&[0, 1, 2]]));
        let rows = tower.divisibility_probe(&c, 3, 2).unwrap();
        // A lone 3-cycle has no cube root; three of them side by side do.
        assert_eq!(rows.iter().map(|r| r.has_root).collect::<Vec<_>>(), vec![false, true]);
    }
}

mod monoids {
    use super::*;

    fn idempotent() -> CommMonoid {
        CommMonoid::Finite(FiniteCommMonoid::idempotent_pair())
    }

    #[test]
    fn completions() {
        let n2 = group_completion(&CommMonoid::Affine(AffineMonoid::free(2))).unwrap();
        assert_eq!((n2.group.rank, n2.group.torsion.len()), (2, 0));
        let pair = group_completion(&idempotent()).unwrap();
        assert_eq!((pair.group.rank, pair.group.torsion.len()), (0, 0));
        let skew = group_completion(&affine(2, &[&[1, 1], &[1, 2]])).unwrap();
        assert_eq!((skew.group.rank, skew.group.torsion.len()), (2, 0));
    }

    #[test]
    fn inverting_p() {
        let LocalizedMonoid::Affine(dyadic) = invert_p(&CommMonoid::Affine(AffineMonoid::free(1)), 2).unwrap() else {
            panic!("affine input")
        };
        // (1, 1) stands for 1/2; doubling it gives 1.
        let half = (vec![1], 1);
        assert!(dyadic.equal(&dyadic.add(&half, &half), &(vec![1], 0)));

        let LocalizedMonoid::Finite(same) = invert_p(&idempotent(), 2).unwrap() else {
            panic!("finite input")
        };
        assert_eq!(same.monoid().size(), 2);
    }

    #[test]
    fn inverting_elements() {
        let n = CommMonoid::Affine(AffineMonoid::free(1));
        let LocalizedMonoid::Affine(z) = localize_at_element(&n, &MonoidElement::Affine(vec![1])).unwrap() else {
            panic!()
        };
        assert!(z.inverse_certificates(8).is_some());
        let LocalizedMonoid::Affine(zero) = localize_at_element(&n, &MonoidElement::Affine(vec![0])).unwrap() else {
            panic!()
        };
        assert!(zero.inverse_certificates(8).is_none());
        let LocalizedMonoid::Affine(half) = localize_at_element(
            &CommMonoid::Affine(AffineMonoid::free(2)),
            &MonoidElement::Affine(vec![1, 0]),
        )
        .unwrap() else {
            panic!()
        };
        assert_eq!(half.as_vector(&(vec![0, 0], 1)), Some(vec![-1, 0]));
        assert!(half.inverse_certificates(8).is_none());
    }

    #[test]
    fn locally_monogenic() {
        assert!(is_locally_monogenic(&CommMonoid::Affine(AffineMonoid::free(1)), 12).is_yes());
        assert!(!is_locally_monogenic(&CommMonoid::Affine(AffineMonoid::free(2)), 12).is_yes());
        assert!(is_locally_monogenic(&idempotent(), 12).is_yes());
    }

    #[test]
    fn isolated_zero() {
        assert!(is_zero_isolated(&CommMonoid::Affine(AffineMonoid::free(1))).isolated);
        assert!(!is_zero_isolated(&CommMonoid::Affine(AffineMonoid::lattice(1))).isolated);
        assert!(!is_zero_isolated(&affine(2, &[&[1, -1], &[-1, 1]])).isolated);
    }

    #[test]
    fn fiber_products() {
        let n = CommMonoid::Affine(AffineMonoid::free(1));
        let z = CommMonoid::Affine(AffineMonoid::lattice(1));
        let incl = MonoidHom::Affine(vec![vec![1]]);
        incl.validate(&n, &z, 8).unwrap();
        let diag = fiber_product((&n, &incl), (&n, &incl), 8).unwrap();
        let CommMonoid::Affine(d) = &diag.monoid else { panic!() };
        assert_eq!(d.nonzero_generators(), vec![vec![1, 1]]);

        let to_zero = MonoidHom::Affine(vec![vec![]]);
        let square = fiber_product((&n, &to_zero), (&n, &to_zero), 8).unwrap();
        let CommMonoid::Affine(s) = &square.monoid else {
            panic!()
        };
        assert_eq!(s.nonzero_generators().len(), 2);

        let pair = idempotent();
        let id = MonoidHom::Finite(vec![0, 1]);
        let fp = fiber_product((&pair, &id), (&pair, &id), 8).unwrap();
        assert_eq!(fp.pairs, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn pullback_checks() {
        let n = pi0_pullback_check(&CommMonoid::Affine(AffineMonoid::free(1)), 2, 12).unwrap();
        assert!(n.passed() && n.invert_anything.is_some());
        let n2 = pi0_pullback_check(&CommMonoid::Affine(AffineMonoid::free(2)), 2, 12).unwrap();
        assert!(n2.collapse && n2.invert_anything.is_none());
        assert!(pi0_pullback_check(&idempotent(), 2, 12).unwrap().passed());
    }
}

mod structures {
    use super::*;

    #[test]
    fn verification() {
        for (n, p) in [(3, 2), (5, 2), (5, 3)] {
            let g = FiniteGroup::cyclic(n);
            let rho = canonical_rho(&g, p).unwrap();
            let v = verify_rho_group(&g, &rho).unwrap();
            assert!(v.conditions_hold && v.conclusion_holds, "Z/{n}, p = {p}");
        }
        let t = FiniteGroup::trivial();
        assert!(
            verify_rho_group(&t, &canonical_rho(&t, 7).unwrap())
                .unwrap()
                .conclusion_holds
        );
    }

    #[test]
    fn canonical_coefficients() {
        // ρ(a, b) = 2a + 2b on Z/3 and 2(a + b + c) on Z/5.
        let z3 = canonical_rho(&FiniteGroup::cyclic(3), 2).unwrap();
        assert_eq!(z3.coordinates, vec![vec![0, 2, 1]; 2]);
        let z5 = canonical_rho(&FiniteGroup::cyclic(5), 3).unwrap();
        assert_eq!(z5.coordinates, vec![vec![0, 2, 4, 1, 3]; 3]);
    }

    #[test]
    fn searches() {
        assert!(search_rho(&FiniteGroup::cyclic(2), 2).unwrap().is_empty());
        assert!(search_rho(&symmetric(3), 2).unwrap().is_empty());
        let z3 = FiniteGroup::cyclic(3);
        assert!(search_rho(&z3, 2).unwrap().contains(&canonical_rho(&z3, 2).unwrap()));
    }

    #[test]
    fn modules() {
        let z3 = FiniteGroup::cyclic(3);
        let rho = canonical_rho(&z3, 2).unwrap();
        let trivial = GModule::trivial_action(FiniteGroup::trivial(), z3.clone());
        assert!(verify_rho_action(&trivial, &rho, true).unwrap().conclusion_holds);

        let negation = GModule::new(FiniteGroup::cyclic(2), z3.clone(), vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        assert!(!negation.is_trivial());
        let v = verify_rho_action(&negation, &rho, true).unwrap();
        // Averaging satisfies both conditions; it is equivariance that fails.
        assert!(v.conditions_hold && !v.action_trivial);
        assert_eq!(v.equivariant, Some(false));

        let z5 = FiniteGroup::cyclic(5);
        let m = GModule::trivial_action(FiniteGroup::cyclic(3), z5.clone());
        let v = verify_rho_action(&m, &canonical_rho(&z5, 2).unwrap(), true).unwrap();
        assert!(v.conditions_hold && v.action_trivial);
    }
}

mod bialgebras {
    use super::*;

    #[test]
    fn axioms_and_fault_injection() {
        assert!(check_axioms(&trivial_bialgebra(3).unwrap()).passed);
        let h = polynomial_bialgebra(3, 2, 4).unwrap();
        assert!(check_axioms(&h).passed);
        // Over F_2 the corrupted table would still be a bialgebra, since
        // the cross term 2·y⊗y vanishes.
        let mut broken = h.clone();
        let y = h.index_of("y").unwrap();
        broken.set_product(y, y, Element::new());
        let report = check_axioms(&broken);
        assert!(!report.passed);
        assert!(report.checks.iter().any(|c| c.failed > 0 && !c.witnesses.is_empty()));
    }

    #[test]
    fn weak_primitivity_and_phi() {
        let h = polynomial_bialgebra(3, 2, 8).unwrap();
        let y2 = h.parse_element("y^2").unwrap();
        assert_eq!(
            is_weakly_primitive(&h, &y2).unwrap(),
            Some(h.parse_element("1").unwrap())
        );
        let y = h.parse_element("y").unwrap();
        for m in 1..5 {
            let v = verify_phi_formula(&h, &y, m).unwrap();
            assert!(v.holds && v.decomposition.is_empty());
        }

        let h2 = polynomial_bialgebra(2, 2, 8).unwrap();
        let y = h2.parse_element("y").unwrap();
        assert!(frobenius(&h2, &y, 2).unwrap().is_empty());
        let v = verify_phi_formula(&h2, &h2.parse_element("y^2").unwrap(), 2).unwrap();
        assert!(v.holds);
        let unit = h2.parse_element("1").unwrap();
        assert_eq!(frobenius(&h2, &unit, 3).unwrap(), unit);
    }

    #[test]
    fn colimit_of_a_point() {
        let c = colimit_along_frobenius(&trivial_bialgebra(2).unwrap()).unwrap();
        assert_eq!(c.dims(), vec![1]);
    }
}

mod homology {
    use super::*;

    #[test]
    fn cyclic_dimensions() {
        let dims = |q, p, d| HomologyBasis::compute(&FiniteGroup::cyclic(q), p, d).unwrap().dims();
        assert_eq!(dims(2, 2, 4), vec![1; 5]);
        assert_eq!(dims(3, 3, 3), vec![1; 4]);
        assert_eq!(dims(3, 2, 3), vec![1, 0, 0, 0]);
    }

    #[test]
    fn symmetric_group_dimensions() {
        // H^*(Σ_4; F_2) is generated in degrees 1, 2, 3 with one relation in degree 4.
        assert_eq!(
            HomologyBasis::compute(&symmetric(4), 2, 3).unwrap().dims(),
            vec![1, 1, 2, 3]
        );
        assert_eq!(
            HomologyBasis::compute(&symmetric(3), 3, 4).unwrap().dims(),
            vec![1, 0, 0, 1, 1]
        );
    }

    #[test]
    fn budget_reports_the_feasible_degree() {
        match HomologyBasis::compute(&symmetric(4), 2, 4) {
            Err(Error::Budget { largest_feasible, .. }) => assert!(largest_feasible.contains('3')),
            other => panic!("expected a budget error, got {other:?}"),
        }
    }

    #[test]
    fn induced_maps() {
        let s2 = HomologyBasis::compute(&symmetric(2), 2, 2).unwrap();
        let s3 = HomologyBasis::compute(&symmetric(3), 2, 2).unwrap();
        // Σ_2 → Σ_3 as the stabilizer of 2.
        let s2_perms = PermGroup::symmetric(2, 10).unwrap();
        let s3_perms = PermGroup::symmetric(3, 10).unwrap();
        let f: Vec<usize> = s2_perms
            .elements()
            .unwrap()
            .iter()
            .map(|p| s3_perms.index_of(&p.direct_sum(&Permutation::identity(1))).unwrap())
            .collect();
        let map = induced_map(&f, &s2, &s3).unwrap();
        assert_eq!(map.matrices[1], vec![vec![1]]);

        let trivial = vec![0; 2];
        let zero = induced_map(&trivial, &s2, &s3).unwrap();
        assert!(zero.matrices[1..].iter().flatten().flatten().all(|&c| c == 0));
        let id = induced_map(&[0, 1], &s2, &s2).unwrap();
        assert_eq!(id.matrices[2], vec![vec![1]]);
    }

    #[test]
    fn kunneth_for_klein_four() {
        let z2 = HomologyBasis::compute(&FiniteGroup::cyclic(2), 2, 2).unwrap();
        let k = kunneth_product(&z2, &z2).unwrap();
        assert_eq!(k.basis.dims(), vec![1, 2, 3]);
    }

    #[test]
    fn coproduct_of_the_generator() {
        let z2 = HomologyBasis::compute(&FiniteGroup::cyclic(2), 2, 2).unwrap();
        let delta = aw_coproduct(&z2);
        let terms: Vec<_> = delta[1][0].iter().map(|t| (t.left, t.right, t.coeff)).collect();
        assert_eq!(terms.len(), 2);
        assert!(terms.contains(&((1, 0), (0, 0), 1)) && terms.contains(&((0, 0), (1, 0), 1)));
        assert_eq!(delta[0][0].len(), 1);
    }

    #[test]
    fn assembled_dimensions() {
        let h = assemble_fin_bialgebra(4, 1, 2).unwrap();
        let by_weight = |d: usize| (0..=4).map(|w| h.slice(d, w).len()).collect::<Vec<_>>();
        assert_eq!(by_weight(0), vec![1; 5]);
        assert_eq!(by_weight(1), vec![0, 0, 1, 1, 1]);

        let h = assemble_fin_bialgebra(2, 3, 2).unwrap();
        assert_eq!((0..=3).map(|d| h.slice(d, 2).len()).collect::<Vec<_>>(), vec![1; 4]);

        let h = assemble_fin_bialgebra(1, 3, 3).unwrap();
        assert!((0..h.dim()).all(|i| h.degree(i) == 0));
    }

    #[test]
    fn assembled_grouplikes_and_frobenius() {
        let h = assemble_fin_bialgebra(4, 1, 2).unwrap();
        let names: Vec<String> = grouplikes(&h).grouplikes.iter().map(|g| h.format_element(g)).collect();
        assert_eq!(names, ["[0]", "[1]", "[2]", "[3]", "[4]"]);
        let one = h.parse_element("[1]").unwrap();
        assert_eq!(h.format_element(&frobenius(&h, &one, 2).unwrap()), "[2]");
        let x = h.parse_element("e1.0[2]").unwrap();
        assert!(frobenius(&h, &x, 2).unwrap().is_empty());
    }
}
