use std::sync::Arc;

use super::*;
use crate::grp::{characters, characters_of_abelian, induce_character, rep_character_norm, GroupSpec, Subgroup};
use num_traits::One;

fn build(s: &str) -> Arc<FiniteGroup> {
    Arc::new(s.parse::<GroupSpec>().unwrap().build().unwrap())
}

fn centralizer_chars(g: &FiniteGroup, x: usize) -> Vec<Character> {
    characters(g, &g.centralizer(x))
}

#[test]
fn central_pair_is_one_dimensional() {
    let g = build("heisenberg:n=1,m=3");
    let z = g.find("(0,0,1)").unwrap();
    for chi in centralizer_chars(&g, z) {
        let m = YDModule::new(g.clone(), z, chi.clone()).unwrap();
        assert_eq!(m.dim(), 1);
        let c = m.braiding();
        let mono = c.as_monomial().unwrap();
        assert_eq!(mono.perm, vec![0]);
        assert_eq!(mono.diag[0], chi.at(z));
    }
}

#[test]
fn trivial_class_braiding_is_flip() {
    let g = build("cyclic:m=3");
    let chi = Character::trivial(&g, &Subgroup::whole(&g));
    let m = YDModule::new(g.clone(), g.identity(), chi).unwrap();
    assert_eq!(m.braiding().as_monomial().unwrap().diag, vec![RootOfUnity::one()]);
}

#[test]
fn heisenberg_class_is_constant_q_up_to_twist() {
    let g = build("heisenberg:n=1,m=3");
    let x = g.find("(1,0,0)").unwrap();
    for chi in centralizer_chars(&g, x) {
        let m = YDModule::new(g.clone(), x, chi.clone()).unwrap();
        assert_eq!(m.dim(), 3);
        let c = m.braiding();
        assert!(c.satisfies_braid_equation());
        assert!(c.is_invertible());
        let q = m.diagonal_form().unwrap();
        let constant = DiagonalBraiding::constant(chi.at(x), 3);
        assert!(q.twist_equivalent(&constant).unwrap());
        assert_eq!(BraidedVectorSpace::from_diagonal(&q).as_monomial(), c.as_monomial());
        assert_eq!(c.diagonal(), Some(q));
    }
}

#[test]
fn heisenberg_braiding_matches_closed_form() {
    // transversal g_ℓ = (0, -ℓ, 0) conjugates x = (1,0,0) to (1,0,ℓ)
    let g = build("heisenberg:n=1,m=3");
    let x = g.find("(1,0,0)").unwrap();
    let class = g.conjugacy_class(x);
    let transversal: Vec<usize> = (0..3)
        .map(|l| g.find(&format!("(0,{},0)", (3 - l) % 3)).unwrap())
        .collect();
    for (l, &member) in class.members.iter().enumerate() {
        assert_eq!(g.label(member), format!("(1,0,{l})"));
    }
    for chi in centralizer_chars(&g, x) {
        let m = YDModule::with_transversal(g.clone(), x, chi.clone(), transversal.clone()).unwrap();
        let q = m.diagonal_form().unwrap();
        for mm in 0..3 {
            for l in 0..3 {
                let z = g.find(&format!("(0,0,{})", (mm + 3 - l) % 3)).unwrap();
                assert_eq!(q.entry(mm, l), chi.at(x).mul(&chi.at(z)));
            }
        }
    }
}

#[test]
fn non_abelian_class_is_not_diagonal() {
    let g = build("unitriangular4:m=3");
    let r = g.find("(1,1,1,0,0,0)").unwrap();
    let chi = centralizer_chars(&g, r).into_iter().nth(1).unwrap();
    let m = YDModule::new(g.clone(), r, chi).unwrap();
    assert_eq!(m.dim(), 27);
    assert!(m.diagonal_form().is_err());
    let c = m.braiding();
    assert!(c.satisfies_braid_equation());
    // degrees: c maps M_z ⊗ M_y into M_{z▷y} ⊗ M_z
    let mono = c.as_monomial().unwrap();
    let d = m.dim();
    for a in 0..d {
        for b in 0..d {
            let t = mono.perm[a * d + b];
            assert_eq!(m.degree(t / d), g.conj(m.degree(a), m.degree(b)));
            assert_eq!(m.degree(t % d), m.degree(a));
        }
    }
}

#[test]
fn transversal_choice_does_not_change_the_diagram() {
    let g = build("heisenberg:n=1,m=5");
    let x = g.find("(2,1,0)").unwrap();
    let mut rev = g.generators().to_vec();
    rev.sort_unstable();
    rev.reverse();
    for chi in centralizer_chars(&g, x) {
        let a = YDModule::new(g.clone(), x, chi.clone()).unwrap();
        let b = YDModule::with_generator_order(g.clone(), x, chi, &rev).unwrap();
        assert_eq!(a.diagonal_form().unwrap().dynkin(), b.diagonal_form().unwrap().dynkin());
    }
}

#[test]
fn wrong_domain_rejected() {
    let g = build("heisenberg:n=1,m=3");
    let x = g.find("(1,0,0)").unwrap();
    let chi = Character::trivial(&g, &Subgroup::whole(&g));
    assert!(matches!(
        YDModule::new(g.clone(), x, chi),
        Err(Error::DomainMismatch(_))
    ));
}

#[test]
fn dynkin_basics() {
    let w = RootOfUnity::new(1, 3);
    let d = DiagonalBraiding::constant(w, 2).dynkin();
    assert_eq!(d.edge(0, 1), Some(w.pow(2)));
    assert_eq!(d.components, vec![vec![0, 1]]);
    let q = RootOfUnity::new(1, 5);
    let split = DiagonalBraiding::new(vec![vec![q, q], vec![q.inv(), q]]).unwrap();
    assert!(split.dynkin().is_totally_disconnected());
    assert_eq!(DiagonalBraiding::constant(q, 1).dynkin().rank(), 1);
    assert!(DiagonalBraiding::constant(q, 1)
        .twist_equivalent(&DiagonalBraiding::constant(q, 2))
        .is_err());
    let other = DiagonalBraiding::new(vec![vec![q, q], vec![q, q.pow(2)]]).unwrap();
    assert!(!other.twist_equivalent(&DiagonalBraiding::constant(q, 2)).unwrap());
}

#[test]
fn diagonal_parsing() {
    let d: DiagonalBraiding = "[[w,w],[w,w]]".parse().unwrap();
    assert_eq!(d, DiagonalBraiding::constant(RootOfUnity::new(1, 3), 2));
    let e: DiagonalBraiding = "[[-1, 1/4], [1, 3/12]]".parse().unwrap();
    assert_eq!(e.entry(1, 1), RootOfUnity::new(1, 4));
    let json = serde_json::to_string(&e).unwrap();
    assert_eq!(serde_json::from_str::<DiagonalBraiding>(&json).unwrap(), e);
    assert!("[[1,1],[1]]".parse::<DiagonalBraiding>().is_err());
}

#[test]
fn central_pairs_double_braiding() {
    let g = build("abelian:m=3x3");
    let all = Subgroup::whole(&g);
    let chars = characters_of_abelian(&g, &all).unwrap();
    for a in [1, 3, 4] {
        for b in [1, 3, 5] {
            for chi in &chars {
                for psi in &chars {
                    let m = YDModule::new(g.clone(), a, chi.clone()).unwrap();
                    let n = YDModule::new(g.clone(), b, psi.clone()).unwrap();
                    let expected = chi.at(b).mul(&psi.at(a)).is_one();
                    assert_eq!(c_squared_is_identity(&m, &n).unwrap(), expected);
                }
            }
        }
    }
}

#[test]
fn self_double_braiding_with_nontrivial_q() {
    let g = build("cyclic:m=3");
    let chars = characters_of_abelian(&g, &Subgroup::whole(&g)).unwrap();
    let m = YDModule::new(g.clone(), 1, chars[1].clone()).unwrap();
    assert!(!c_squared_is_identity(&m, &m).unwrap());
}

#[test]
fn central_fiber_of_induced_irrep() {
    let g = build("heisenberg:n=1,m=3");
    let z = g.find("(0,0,1)").unwrap();
    // maximal abelian subgroup {(a, 0, c)}
    let a = Subgroup::generated(&g, &[g.find("(1,0,0)").unwrap(), z]);
    assert_eq!(a.order(), 9);
    let chi = characters_of_abelian(&g, &a)
        .unwrap()
        .into_iter()
        .find(|c| !c.at(z).is_one())
        .unwrap();
    let rho = induce_character(&g, &a, &chi).unwrap();
    assert_eq!(rho.dim(), 3);
    assert!(rep_character_norm(&rho).is_one());
    let m = YDModule::new(g.clone(), z, rho).unwrap();
    let (fiber, d) = m.central_fiber();
    assert_eq!(d, 3);
    match fiber {
        CentralFiber::Scalar(r) => assert_eq!(r.order(), 3),
        CentralFiber::NotScalar => panic!("central element must act by a scalar"),
    }
    assert!(m.braiding().satisfies_braid_equation());
}

#[test]
fn reducible_fiber_is_not_scalar() {
    let g = build("heisenberg:n=1,m=3");
    let x = g.find("(1,0,0)").unwrap();
    let cent = g.centralizer(x);
    let chars = characters_of_abelian(&g, &cent).unwrap();
    let a = chars.iter().find(|c| c.at(x).is_one()).unwrap();
    let b = chars.iter().find(|c| !c.at(x).is_one()).unwrap();
    let rho = MonomialRep::from_character(a)
        .direct_sum(&MonomialRep::from_character(b))
        .unwrap();
    let m = YDModule::new(g.clone(), x, rho).unwrap();
    assert_eq!(m.central_fiber(), (CentralFiber::NotScalar, 2));
}

#[test]
fn export_round_trip() {
    let g = build("heisenberg:n=1,m=3");
    let x = g.find("(1,1,0)").unwrap();
    let chi = centralizer_chars(&g, x).into_iter().nth(4).unwrap();
    let c = YDModule::new(g.clone(), x, chi).unwrap().braiding();
    let doc = c.export();
    let json = serde_json::to_string(&doc).unwrap();
    let back = BraidedVectorSpace::import(&serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back.export(), doc);
    assert_eq!(back.as_monomial(), c.as_monomial());
}

#[test]
fn product_classes_factor() {
    let a = build("heisenberg:n=1,m=3");
    let b = build("dihedral4");
    let g = build("product(heisenberg:n=1,m=3;dihedral4)");
    let m = b.order();
    for x1 in [a.find("(1,0,0)").unwrap(), a.find("(0,0,1)").unwrap()] {
        for x2 in 0..m {
            let x = x1 * m + x2;
            let class = g.conjugacy_class(x);
            let c1 = a.conjugacy_class(x1);
            let c2 = b.conjugacy_class(x2);
            let expected: Vec<usize> = c1
                .members
                .iter()
                .flat_map(|&u| c2.members.iter().map(move |&v| u * m + v))
                .collect();
            assert_eq!(class.members, expected);
            assert_eq!(class.centralizer.order(), c1.centralizer.order() * c2.centralizer.order());
        }
    }
}
