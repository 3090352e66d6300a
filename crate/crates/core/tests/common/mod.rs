#![allow(dead_code)]

use arinteract_core::{Mat4, Part, Vec3};
use rand::Rng;

pub fn random_unit(rng: &mut impl Rng) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let l = v.length();
        if l > 0.1 && l <= 1.0 {
            return v * (1.0 / l);
        }
    }
}

pub fn random_rigid(rng: &mut impl Rng) -> Mat4 {
    let axis = random_unit(rng);
    let angle = rng.gen_range(-180.0..180.0);
    let t = Vec3::new(
        rng.gen_range(-50.0..50.0),
        rng.gen_range(-50.0..50.0),
        rng.gen_range(-50.0..50.0),
    );
    let r = Mat4::rotation(angle, axis).unwrap();
    let mut m = r;
    m.m[12] = t.x;
    m.m[13] = t.y;
    m.m[14] = t.z;
    m
}

/// Rotation matrix from Rodrigues' formula `I + sinθ K + (1 − cosθ) K²`,
/// assembled element by element.
pub fn rodrigues(angle_deg: f64, axis: Vec3) -> Mat4 {
    let a = axis * (1.0 / axis.length());
    let k = [[0.0, -a.z, a.y], [a.z, 0.0, -a.x], [-a.y, a.x, 0.0]];
    let th = angle_deg * std::f64::consts::PI / 180.0;
    let mut rows = [[0.0; 4]; 4];
    rows[3][3] = 1.0;
    for i in 0..3 {
        for j in 0..3 {
            let k2: f64 = (0..3).map(|l| k[i][l] * k[l][j]).sum();
            rows[i][j] =
                if i == j { 1.0 } else { 0.0 } + th.sin() * k[i][j] + (1.0 - th.cos()) * k2;
        }
    }
    Mat4::from_rows(rows)
}

/// Textbook triple-loop product over `get`.
pub fn naive_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut rows = [[0.0; 4]; 4];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..4).map(|k| a.get(i, k) * b.get(k, j)).sum();
        }
    }
    Mat4::from_rows(rows)
}

/// Plane-intersection + same-side inside test over every triangle of every
/// pickable part; independent of the Möller–Trumbore path.
pub fn brute_force_pick(
    origin: Vec3,
    dir: Vec3,
    parts: &[Part],
    model: &Mat4,
    max_dist: f64,
) -> Option<(usize, f64)> {
    let mut hits: Vec<(usize, f64)> = Vec::new();
    for (pi, part) in parts.iter().enumerate() {
        if !part.pickable {
            continue;
        }
        let off = part.active_offset();
        let xf = naive_mul(model, &Mat4::translation(off.x, off.y, off.z));
        for tri in &part.triangles {
            let [a, b, c] = tri.map(|v| xf.transform_point(v));
            let n = (b - a).cross(c - a);
            let denom = n.dot(dir);
            if denom.abs() < 1e-12 {
                continue;
            }
            let t = n.dot(a - origin) / denom;
            if !(t > 1e-9 && t <= max_dist) {
                continue;
            }
            let p = origin + dir * t;
            let inside = [(a, b), (b, c), (c, a)]
                .iter()
                .all(|&(u, v)| (v - u).cross(p - u).dot(n) >= 0.0);
            if inside {
                hits.push((pi, t));
            }
        }
    }
    let best = hits.iter().map(|h| h.1).fold(f64::INFINITY, f64::min);
    hits.into_iter()
        .filter(|h| h.1 <= best + 1e-9)
        .min_by_key(|h| h.0)
}

/// About 80 box-shaped parts scattered in a 40×40×40 block, every fifth part
/// not pickable.
pub fn many_parts(rng: &mut impl Rng, count: usize) -> Vec<Part> {
    (0..count)
        .map(|i| {
            let c = Vec3::new(
                rng.gen_range(-20.0..20.0),
                rng.gen_range(-20.0..20.0),
                rng.gen_range(-20.0..20.0),
            );
            let h = Vec3::new(
                rng.gen_range(0.5..4.0),
                rng.gen_range(0.5..4.0),
                rng.gen_range(0.5..4.0),
            );
            let mut p = Part::new(format!("part_{i:02}"), box_triangles(c, h));
            p.pickable = i % 5 != 4;
            p
        })
        .collect()
}

pub fn box_triangles(c: Vec3, h: Vec3) -> Vec<[Vec3; 3]> {
    let v = |sx: f64, sy: f64, sz: f64| Vec3::new(c.x + sx * h.x, c.y + sy * h.y, c.z + sz * h.z);
    let corners = [
        v(-1., -1., -1.),
        v(1., -1., -1.),
        v(1., 1., -1.),
        v(-1., 1., -1.),
        v(-1., -1., 1.),
        v(1., -1., 1.),
        v(1., 1., 1.),
        v(-1., 1., 1.),
    ];
    let quads = [
        [0, 1, 2, 3],
        [4, 7, 6, 5],
        [0, 4, 5, 1],
        [1, 5, 6, 2],
        [2, 6, 7, 3],
        [4, 0, 3, 7],
    ];
    quads
        .iter()
        .flat_map(|q| {
            [
                [corners[q[0]], corners[q[1]], corners[q[2]]],
                [corners[q[0]], corners[q[2]], corners[q[3]]],
            ]
        })
        .collect()
}
