use conway_core::notation::{expand_branch, parse, Branch, MatrixAtom, PolyAtom, PolyFactor, PolySum, PolyTerm, Sign};
use conway_core::oracle::{naive_expand, point_check, point_check_branches, polynomial_terms};
use conway_core::polyring::VarId;
use conway_core::registry;

const TRIALS: u32 = 100;
const SEED: u64 = 2024;

fn corpus() -> Vec<(String, conway_core::Expr)> {
    registry::shipped()
        .into_iter()
        .flat_map(|r| {
            r.expressions
                .iter()
                .map(|t| (r.id.clone(), parse(t).unwrap()))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Adds `a1` to the first entry of the last boundary vector or matrix of a product.
fn inject_fault(branch: &Branch) -> Branch {
    let extra = (
        Sign::Plus,
        PolyTerm {
            factors: vec![PolyFactor {
                base: PolyAtom::Var(VarId::new(1).unwrap()),
                exponent: None,
            }],
        },
    );
    let push = |s: &mut PolySum| s.terms.push(extra.clone());
    match branch {
        Branch::PolyLit(p) => {
            let mut p = p.clone();
            push(&mut p);
            Branch::PolyLit(p)
        }
        Branch::Product(atoms) => {
            let mut atoms = atoms.clone();
            let last = atoms.last_mut().unwrap();
            match last {
                MatrixAtom::Col2(e) | MatrixAtom::Row2(e) => push(&mut e[0]),
                MatrixAtom::Col5(e) | MatrixAtom::Row5(e) => push(&mut e[0]),
                MatrixAtom::Mat2(m) => push(&mut m[0][0]),
                MatrixAtom::MetricM | MatrixAtom::MetricP5 => panic!("product ends in a metric"),
            }
            Branch::Product(atoms)
        }
    }
}

#[test]
fn naive_expansion_matches_canonical_form() {
    for (id, e) in corpus() {
        for b in e.branches() {
            let p = expand_branch(b).unwrap();
            assert_eq!(naive_expand(b).unwrap(), polynomial_terms(&p), "{id}: {b}");
        }
    }
}

#[test]
fn random_points_agree() {
    for (id, e) in corpus() {
        assert!(point_check(&e, TRIALS, SEED), "{id}");
    }
}

#[test]
fn injected_faults_are_caught_by_both_paths() {
    for (id, e) in corpus() {
        let branches = e.branches();
        let reference = expand_branch(branches.last().unwrap()).unwrap();
        let faulty = inject_fault(&branches[0]);
        assert_ne!(naive_expand(&faulty).unwrap(), polynomial_terms(&reference), "{id}");
        let mut mixed = branches.to_vec();
        mixed.insert(0, faulty);
        assert!(!point_check_branches(&mixed, TRIALS, SEED), "{id}");
    }
}

#[test]
fn borromean_terms() {
    let records = registry::shipped();
    let r = records.iter().find(|r| r.id == "c6-borromean-1").unwrap();
    let e = parse(&r.expressions[0]).unwrap();
    assert_eq!(naive_expand(&e.branches()[0]).unwrap().len(), 16);
}
