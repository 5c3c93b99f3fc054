//! Independent single-gas Roe solver carrying the mass fraction as a passive
//! scalar (Toro, "Riemann Solvers and Numerical Methods for Fluid Dynamics",
//! ch. 11), used as an oracle for the two-species Roe flux with equal gammas.

/// Roe flux for `(ρ, ρu, ρE, ρY)` with one γ, written from primitives.
pub fn textbook_roe(g: f64, l: (f64, f64, f64, f64), r: (f64, f64, f64, f64)) -> [f64; 4] {
    let cons = |(rho, u, p, y): (f64, f64, f64, f64)| {
        let e = p / (g - 1.0) + 0.5 * rho * u * u;
        let h = (e + p) / rho;
        (
            [rho, rho * u, e, rho * y],
            [rho * u, rho * u * u + p, (e + p) * u, rho * u * y],
            h,
        )
    };
    let (ul, fl, hl) = cons(l);
    let (ur, fr, hr) = cons(r);
    let (sl, sr) = (l.0.sqrt(), r.0.sqrt());
    let avg = |a: f64, b: f64| (sl * a + sr * b) / (sl + sr);
    let u = avg(l.1, r.1);
    let h = avg(hl, hr);
    let y = avg(l.3, r.3);
    let a = ((g - 1.0) * (h - 0.5 * u * u)).sqrt();
    let d: [f64; 4] = std::array::from_fn(|k| ur[k] - ul[k]);
    let a2 = (g - 1.0) / (a * a) * (d[0] * (h - u * u) + u * d[1] - d[2]);
    let a1 = (d[0] * (u + a) - d[1] - a * a2) / (2.0 * a);
    let a3 = d[0] - a1 - a2;
    let a4 = d[3] - y * d[0];
    let waves = [
        ((u - a).abs(), a1, [1.0, u - a, h - u * a, y]),
        (u.abs(), a2, [1.0, u, 0.5 * u * u, y]),
        ((u + a).abs(), a3, [1.0, u + a, h + u * a, y]),
        (u.abs(), a4, [0.0, 0.0, 0.0, 1.0]),
    ];
    std::array::from_fn(|k| {
        let diss: f64 = waves.iter().map(|(lam, s, v)| lam * s * v[k]).sum();
        0.5 * (fl[k] + fr[k]) - 0.5 * diss
    })
}
