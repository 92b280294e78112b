//! Brute-force geometry shared by the oracle suites.

use coopetitive_core::geom2d::{int, Rational, Rational2};

fn cross(o: &Rational2, a: &Rational2, b: &Rational2) -> Rational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

/// `p` is inside some triangle or on some segment spanned by `pts`.
pub fn brute_inside(pts: &[Rational2], p: &Rational2) -> bool {
    let zero = int(0);
    for a in pts {
        if a == p {
            return true;
        }
        for b in pts {
            let on_ab = cross(a, b, p) == zero
                && p.x >= a.x.clone().min(b.x.clone())
                && p.x <= a.x.clone().max(b.x.clone())
                && p.y >= a.y.clone().min(b.y.clone())
                && p.y <= a.y.clone().max(b.y.clone());
            if a != b && on_ab {
                return true;
            }
            for c in pts {
                if cross(a, b, c) == zero {
                    continue;
                }
                let d = [cross(a, b, p), cross(b, c, p), cross(c, a, p)];
                if d.iter().all(|v| v >= &zero) || d.iter().all(|v| v <= &zero) {
                    return true;
                }
            }
        }
    }
    false
}

pub fn brute_vertices(pts: &[Rational2]) -> Vec<Rational2> {
    let mut unique = pts.to_vec();
    unique.sort();
    unique.dedup();
    unique
        .iter()
        .filter(|p| {
            let others: Vec<_> = unique.iter().filter(|q| q != p).cloned().collect();
            !brute_inside(&others, p)
        })
        .cloned()
        .collect()
}

#[allow(dead_code)]
pub fn corner_sums(base: &[Rational2], gens: &[Rational2]) -> Vec<Rational2> {
    let mut out = Vec::new();
    for mask in 0..(1 << gens.len()) {
        let offset = gens
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .fold(Rational2::zero(), |acc, (_, g)| &acc + g);
        out.extend(base.iter().map(|b| b + &offset));
    }
    out
}
