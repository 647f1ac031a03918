use pgdir::bridge::kiss_somlai_set;
use pgdir::directions::{blocking_check, spectrum, PointMultiset, ProjMultiset};
use pgdir::gf::FieldCtx;
use pgdir::plane::{dot3, PlaneCtx, Slope};

/// Line counts by testing `l . P = 0` on coordinates.
fn scan_counts(m: &ProjMultiset) -> Vec<u64> {
    let plane = m.plane();
    let f = plane.field();
    plane
        .line_ids()
        .map(|l| {
            let lc = plane.line_coords(l);
            plane
                .point_ids()
                .filter(|&pt| dot3(f, lc, plane.point_coords(pt)).is_zero())
                .map(|pt| m.get(pt))
                .sum()
        })
        .collect()
}

/// `S` closed up by direction points so that every line meets it in at least `n = (p-1)/2`.
fn closed_kiss_somlai(p: u64) -> (ProjMultiset, u64) {
    let plane = PlaneCtx::new(FieldCtx::prime(p).unwrap());
    let s = kiss_somlai_set(&plane).unwrap();
    let n = (p - 1) / 2;
    let sp = spectrum(&s);
    let mut m = s.to_projective();
    for d in sp.mod_special(&plane) {
        let lo = *sp.counts(d).iter().min().unwrap();
        m.add(plane.direction_point(d), n - lo);
    }
    (m, n)
}

#[test]
fn kiss_somlai_closure_is_redei_type_but_fails_residue_claim() {
    for p in [5u64, 7, 11] {
        let (m, n) = closed_kiss_somlai(p);
        let plane = m.plane().clone();
        let inf = plane.line_at_infinity();
        let r = blocking_check(&m, n);
        assert!(r.is_nfold, "p={p}");
        assert!(r.redei_lines.contains(&inf));
        assert_eq!(m.size() - m.line_count(inf), n * p);
        let on_inf = plane.points_on(inf).iter().filter(|&&pt| m.get(pt) > 0).count();
        // three points on the Redei line; the n mod p conclusion needs at most q/p + 1 = 2
        assert_eq!(on_inf, 3);
        let counts = scan_counts(&m);
        let scan = counts.iter().all(|&c| c % p == n % p);
        assert_eq!(r.all_lines_n_mod_p, scan);
        assert!(!scan, "p={p}: a mod-special direction rules out constant residues");
    }
}

#[test]
fn line_union_with_two_directions_meets_every_line_in_n_mod_p() {
    for p in [5u64, 7] {
        let plane = PlaneCtx::new(FieldCtx::prime(p).unwrap());
        let f = plane.field();
        let (n1, n2) = (2u64, 1u64);
        let mut lines = Vec::new();
        for b in 0..n1 as u32 {
            lines.push((plane.line_with_slope(Slope::Finite(f.zero()), f.elem(b)), 1));
        }
        for b in 0..n2 as u32 {
            lines.push((plane.line_with_slope(Slope::Infinite, f.elem(b)), 1));
        }
        let aff = PointMultiset::from_lines(plane.clone(), &lines);
        let mut m = aff.to_projective();
        m.add(plane.direction_point(Slope::Finite(f.zero())), n1);
        m.add(plane.direction_point(Slope::Infinite), n2);
        let n = n1 + n2;
        let r = blocking_check(&m, n);
        assert!(r.is_nfold && r.is_minimal, "p={p}");
        assert!(r.redei_lines.contains(&plane.line_at_infinity()));
        assert!(r.all_lines_n_mod_p);
        assert!(scan_counts(&m).iter().all(|&c| c % p == n % p));
    }
}
