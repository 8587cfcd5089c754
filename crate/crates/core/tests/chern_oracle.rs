mod common;

use common::{eigenbasis_matrix, forced_zero_coordinates, invariance_system, oguiso_f};
use pic2cone::chern::{check_form_invariance, forced_vanishing, Basis, SymForm};
use pic2cone::conegeo::{eigen_data, EigenData};
use pic2cone::{Cone2, LatMat, QF};
use proptest::prelude::*;

#[test]
fn forced_vanishing_matches_linear_system() {
    let cases = [
        (oguiso_f(), 2u64),
        (LatMat::from_rows(2, 1, 1, 1).unwrap(), 5),
        (LatMat::from_rows(-1, -8, 8, 63).unwrap(), 15),
    ];
    for (f, d) in cases {
        let m = eigenbasis_matrix(&f, d);
        let alpha = if m[1][1] > m[0][0] { m[1][1].clone() } else { m[0][0].clone() };
        for n in 1..=8 {
            let oracle: Vec<u32> =
                forced_zero_coordinates(invariance_system(n, &m)).into_iter().map(|c| c as u32).collect();
            let got: Vec<u32> = forced_vanishing(n, &alpha).unwrap().into_iter().collect();
            assert_eq!(got, oracle, "n = {n}, f = {f}");
        }
    }
}

#[test]
fn oracle_sees_no_constraint_for_identity() {
    let id = [[QF::one(2), QF::zero(2)], [QF::zero(2), QF::one(2)]];
    assert!(forced_zero_coordinates(invariance_system(4, &id)).is_empty());
}

fn oguiso_eigen_basis() -> Basis {
    let f = oguiso_f();
    let EigenData::Real { rays, .. } = eigen_data(&f, 2).unwrap() else { unreachable!() };
    Basis::cone_rays(&Cone2::new(rays[0].clone(), rays[1].clone()).unwrap())
}

fn small_form(n: u32) -> impl Strategy<Value = SymForm> {
    prop::collection::vec(-3i64..=3, (n + 1) as usize)
        .prop_map(move |c| SymForm::new(n, c.into_iter().map(|x| QF::from_int(x, 2)).collect()).unwrap())
}

fn mat2() -> impl Strategy<Value = [[QF; 2]; 2]> {
    prop::array::uniform4(-3i64..=3)
        .prop_map(|[a, b, c, d]| [[QF::from_int(a, 2), QF::from_int(b, 2)], [QF::from_int(c, 2), QF::from_int(d, 2)]])
}

proptest! {
    #[test]
    fn pullback_is_functorial(form in (2u32..=5).prop_flat_map(small_form), a in mat2(), b in mat2()) {
        // (F o A) o B = F o (A B)
        let lhs = form.pullback(&a).pullback(&b);
        let rhs = form.pullback(&common::mat_mul(&a, &b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn invariance_matches_oracle_null_space(form in (2u32..=6).prop_flat_map(small_form)) {
        let basis = oguiso_eigen_basis();
        let rep = check_form_invariance(&form, &oguiso_f(), &basis).unwrap();
        let forced = forced_zero_coordinates(invariance_system(form.n(), &basis.express(&oguiso_f()).unwrap()));
        let expect = forced.iter().all(|&m| form.coeff(m as u32).is_zero());
        prop_assert_eq!(rep.invariant, expect);
    }
}
