mod common;

use common::{affine, frac, int, mul, Affine};
use num_integer::Integer;
use sector_pack::{deserialize, serialize, PackingFamily, PolyForm, QuadPoly, QuasiPoly, Variant};

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

fn quad(form: &PolyForm) -> &QuadPoly {
    match form {
        PolyForm::Quad(f) => f,
        PolyForm::Quasi(_) => panic!("expected a polynomial"),
    }
}

#[test]
fn golden_files_are_bit_exact() {
    let cases = [
        ("cantor_f.json", PackingFamily::cantor(Variant::F)),
        ("cantor_g.json", PackingFamily::cantor(Variant::G)),
        ("steep_f_1.json", PackingFamily::steep(Variant::F, 1).unwrap()),
        ("steep_g_1.json", PackingFamily::steep(Variant::G, 1).unwrap()),
        ("quasi_3_2.json", PackingFamily::quasi_h(3, 2).unwrap()),
    ];
    for (file, fam) in cases {
        let text = golden(file);
        assert_eq!(format!("{}\n", serialize(fam.form())), text, "{file}");
        assert_eq!(&deserialize(text.trim_end()).unwrap(), fam.form(), "{file}");
    }
}

#[test]
fn cantor_printed_forms() {
    // ((x+y)^2 + x + 3y)/2 and ((x+y)^2 + 3x + y)/2
    let sum = affine(1, 1, 0);
    let sq = mul(&sum, &sum).scale(&frac(1, 2));
    let f = sq.add(&affine(1, 3, 0).scale(&frac(1, 2)).poly());
    let g = sq.add(&affine(3, 1, 0).scale(&frac(1, 2)).poly());
    assert_eq!(quad(PackingFamily::cantor(Variant::F).form()), &f);
    assert_eq!(quad(PackingFamily::cantor(Variant::G).form()), &g);
}

#[test]
fn steep_printed_forms() {
    for r in 1..=10i64 {
        // r x (x-1)/2 + x + y  and  r x (x+1)/2 + x - y
        let half_r = frac(r, 2);
        let f = mul(&affine(1, 0, 0), &affine(1, 0, -1)).scale(&half_r).add(&affine(1, 1, 0).poly());
        let g = mul(&affine(1, 0, 0), &affine(1, 0, 1)).scale(&half_r).add(&affine(1, -1, 0).poly());
        assert_eq!(quad(PackingFamily::steep(Variant::F, r as u64).unwrap().form()), &f);
        assert_eq!(quad(PackingFamily::steep(Variant::G, r as u64).unwrap().form()), &g);
    }
    // F_1 = x(x+1)/2 + y
    let f1 = mul(&affine(1, 0, 0), &affine(1, 0, 1)).scale(&frac(1, 2)).add(&affine(0, 1, 0).poly());
    assert_eq!(quad(PackingFamily::steep(Variant::F, 1).unwrap().form()), &f1);
}

fn valid_divides(max_s: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for s in 2..=max_s {
        for r in 1..s {
            if r.gcd(&s) == 1 && (s - 1) % r == 0 {
                out.push((r, s));
            }
        }
    }
    out
}

#[test]
fn divides_printed_forms() {
    for (r, s) in valid_divides(13) {
        let (ri, si) = (r as i64, s as i64);
        let d = (si - 1) / ri;
        let lead = affine(1, -d, 0);
        let sq = mul(&lead, &lead).scale(&frac(ri, 2));
        let f = sq.add(&affine(2 - ri, d * ri - 2 * d + 2, 0).scale(&frac(1, 2)).poly());
        let g = sq.add(&affine(ri + 2, -(2 * d + si + 1), 0).scale(&frac(1, 2)).poly());
        assert_eq!(quad(PackingFamily::divides(Variant::F, r, s).unwrap().form()), &f, "F {r}/{s}");
        assert_eq!(quad(PackingFamily::divides(Variant::G, r, s).unwrap().form()), &g, "G {r}/{s}");
    }
}

#[test]
fn unit_divides_printed_forms() {
    for s in 2..=10i64 {
        // (x-(s-1)y)^2/2 + (x+(3-s)y)/2  and  (x-(s-1)y)^2/2 + (3x+(1-3s)y)/2
        let lead = affine(1, -(s - 1), 0);
        let sq = mul(&lead, &lead).scale(&frac(1, 2));
        let f = sq.add(&affine(1, 3 - s, 0).scale(&frac(1, 2)).poly());
        let g = sq.add(&affine(3, 1 - 3 * s, 0).scale(&frac(1, 2)).poly());
        assert_eq!(quad(PackingFamily::divides(Variant::F, 1, s as u64).unwrap().form()), &f);
        assert_eq!(quad(PackingFamily::divides(Variant::G, 1, s as u64).unwrap().form()), &g);
    }
}

#[test]
fn divides_statement_matches_block_derivation() {
    for (r, s) in valid_divides(20) {
        let (ri, si) = (r as i64, s as i64);
        let d = (si - 1) / ri;
        // r(x-dy)(x-dy-1)/2 + x - (d-1)y   and   r(x-dy)(x-dy-1)/2 + (r+1)x - (d+s)y
        let block = mul(&affine(1, -d, 0), &affine(1, -d, -1)).scale(&frac(ri, 2));
        let f = block.add(&affine(1, -(d - 1), 0).poly());
        let g = block.add(&affine(ri + 1, -(d + si), 0).poly());
        assert_eq!(quad(PackingFamily::divides(Variant::F, r, s).unwrap().form()), &f);
        assert_eq!(quad(PackingFamily::divides(Variant::G, r, s).unwrap().form()), &g);
    }
}

#[test]
fn quasi_three_halves_display() {
    let h = PackingFamily::quasi_h(3, 2).unwrap();
    let even = QuadPoly::new([frac(3, 4), int(0), int(0), frac(-1, 2), int(2), int(0)]);
    let odd = QuadPoly::new([frac(3, 4), int(0), int(0), int(-1), int(2), frac(5, 4)]);
    assert_eq!(h.form(), &PolyForm::Quasi(QuasiPoly::new(vec![even, odd]).unwrap()));
}

#[test]
fn quasi_branches_follow_residue_formula() {
    for r in 1..=10u64 {
        for s in 1..=10u64 {
            if r.gcd(&s) != 1 {
                continue;
            }
            let fam = PackingFamily::quasi_h(r, s).unwrap();
            let PolyForm::Quasi(h) = fam.form() else { panic!("quasi") };
            assert_eq!(h.period() as u64, s);
            for (l, branch) in h.branches().iter().enumerate() {
                let (ri, si, li) = (r as i64, s as i64, l as i64);
                let u = ri * li / si;
                // h = r(x-l)(x-l-s)/(2s^2) + (u+1)(x-l)/s + y, H = s*h + l
                let prod = mul(&affine(1, 0, -li), &affine(1, 0, -li - si)).scale(&frac(ri, 2 * si * si));
                let lin = Affine { x: frac(u + 1, si), y: int(1), c: frac(-(u + 1) * li, si) };
                let small = prod.add(&lin.poly());
                let expected = small.scale(&int(si)).add(&affine(0, 0, li).poly());
                assert_eq!(branch, &expected, "H_{r}/{s} branch {l}");
                for c in branch.coefficients() {
                    assert!((2 * s as i64) % i64::try_from(c.denom().clone()).unwrap() == 0, "denominator of {c}");
                }
            }
        }
    }
}

#[test]
fn quasi_with_unit_period_is_steep() {
    for r in 1..=10 {
        let h = PackingFamily::quasi_h(r, 1).unwrap();
        let PolyForm::Quasi(q) = h.form() else { panic!("quasi") };
        assert_eq!(PolyForm::Quad(q.branches()[0].clone()), *PackingFamily::steep(Variant::F, r).unwrap().form());
    }
}

#[test]
fn packing_coefficients_have_half_integer_denominators() {
    for fam in common::families() {
        if let PolyForm::Quad(f) = fam.form() {
            for c in f.coefficients() {
                assert!(c.denom() == &1.into() || c.denom() == &2.into(), "{:?}: {c}", fam.kind());
            }
        }
    }
}
