//! Reference values and independent oracles shared by the integration tests.
#![allow(dead_code)]

/// `(s, L, Q_L, R_L, R_cr)`; `None` marks the cells whose rate comes from
/// a different construction.
pub const TABLE_CELLS: [(u32, u32, Option<f64>, f64, f64); 81] = [
    (2, 2, Some(0.244), 0.2358, 0.3355),
    (2, 3, Some(0.233), 0.2597, 0.3279),
    (2, 4, Some(0.226), 0.2729, 0.3242),
    (2, 5, Some(0.221), 0.2813, 0.3226),
    (2, 6, Some(0.218), 0.2871, 0.3218),
    (2, 7, Some(0.215), 0.2915, 0.3216),
    (2, 8, Some(0.212), 0.2948, 0.3215),
    (2, 9, Some(0.211), 0.2975, 0.3215),
    (2, 10, Some(0.209), 0.2997, 0.3216),
    (3, 2, Some(0.176), 0.1147, 0.2177),
    (3, 3, Some(0.167), 0.1346, 0.2109),
    (3, 4, Some(0.161), 0.1469, 0.2065),
    (3, 5, Some(0.156), 0.1552, 0.2036),
    (3, 6, Some(0.152), 0.1611, 0.2017),
    (3, 7, Some(0.149), 0.1656, 0.2006),
    (3, 8, Some(0.147), 0.1690, 0.1998),
    (3, 9, Some(0.145), 0.1718, 0.1994),
    (3, 10, Some(0.143), 0.1741, 0.1992),
    (4, 2, Some(0.139), 0.0684, 0.1632),
    (4, 3, Some(0.133), 0.0838, 0.1580),
    (4, 4, Some(0.128), 0.0941, 0.1542),
    (4, 5, Some(0.123), 0.1014, 0.1514),
    (4, 6, Some(0.120), 0.1068, 0.1494),
    (4, 7, Some(0.117), 0.1110, 0.1479),
    (4, 8, Some(0.115), 0.1143, 0.1468),
    (4, 9, Some(0.113), 0.1170, 0.1460),
    (4, 10, Some(0.111), 0.1192, 0.1455),
    (5, 2, Some(0.115), 0.0456, 0.1311),
    (5, 3, Some(0.110), 0.0575, 0.1271),
    (5, 4, Some(0.106), 0.0660, 0.1240),
    (5, 5, Some(0.103), 0.0723, 0.1216),
    (5, 6, Some(0.100), 0.0771, 0.1197),
    (5, 7, Some(0.098), 0.0809, 0.1183),
    (5, 8, Some(0.096), 0.0840, 0.1171),
    (5, 9, Some(0.094), 0.0865, 0.1162),
    (5, 10, Some(0.092), 0.0886, 0.1155),
    (6, 2, Some(0.098), 0.0325, 0.1098),
    (6, 3, Some(0.095), 0.0420, 0.1067),
    (6, 4, Some(0.092), 0.0490, 0.1041),
    (6, 5, Some(0.089), 0.0544, 0.1021),
    (6, 6, Some(0.086), 0.0587, 0.1004),
    (6, 7, Some(0.084), 0.0621, 0.0991),
    (6, 8, Some(0.083), 0.0649, 0.0980),
    (6, 9, Some(0.081), 0.0672, 0.0971),
    (6, 10, Some(0.080), 0.0692, 0.0963),
    (7, 2, None, 0.0260, 0.0945),
    (7, 3, Some(0.083), 0.0321, 0.0920),
    (7, 4, Some(0.080), 0.0380, 0.0899),
    (7, 5, Some(0.078), 0.0426, 0.0882),
    (7, 6, Some(0.076), 0.0463, 0.0868),
    (7, 7, Some(0.074), 0.0494, 0.0855),
    (7, 8, Some(0.073), 0.0519, 0.0845),
    (7, 9, Some(0.072), 0.0541, 0.0837),
    (7, 10, Some(0.070), 0.0559, 0.0829),
    (8, 2, None, 0.0213, 0.0830),
    (8, 3, Some(0.074), 0.0253, 0.0810),
    (8, 4, Some(0.072), 0.0303, 0.0793),
    (8, 5, Some(0.070), 0.0343, 0.0778),
    (8, 6, Some(0.068), 0.0376, 0.0765),
    (8, 7, Some(0.067), 0.0403, 0.0754),
    (8, 8, Some(0.065), 0.0426, 0.0745),
    (8, 9, Some(0.064), 0.0446, 0.0737),
    (8, 10, Some(0.063), 0.0463, 0.0730),
    (9, 2, None, 0.0178, 0.0741),
    (9, 3, Some(0.067), 0.0205, 0.0724),
    (9, 4, Some(0.065), 0.0248, 0.0709),
    (9, 5, Some(0.063), 0.0283, 0.0696),
    (9, 6, Some(0.062), 0.0312, 0.0685),
    (9, 7, Some(0.061), 0.0336, 0.0676),
    (9, 8, Some(0.059), 0.0357, 0.0667),
    (9, 9, Some(0.058), 0.0375, 0.0660),
    (9, 10, Some(0.057), 0.0391, 0.0654),
    (10, 2, None, 0.0151, 0.0668),
    (10, 3, Some(0.061), 0.0169, 0.0654),
    (10, 4, Some(0.059), 0.0206, 0.0642),
    (10, 5, Some(0.058), 0.0237, 0.0631),
    (10, 6, Some(0.057), 0.0263, 0.0621),
    (10, 7, Some(0.056), 0.0285, 0.0612),
    (10, 8, Some(0.054), 0.0304, 0.0605),
    (10, 9, Some(0.054), 0.0320, 0.0598),
    (10, 10, Some(0.053), 0.0335, 0.0592),
];

/// `(s, C(s), Q(s), R_cr at L = 1)`.
pub const TABLE_BOTTOM: [(u32, f64, f64, f64); 9] = [
    (2, 0.3832, 0.2864, 0.3510),
    (3, 0.2455, 0.2028, 0.2284),
    (4, 0.1810, 0.1569, 0.1705),
    (5, 0.1434, 0.1280, 0.1364),
    (6, 0.1188, 0.1080, 0.1137),
    (7, 0.1014, 0.0935, 0.0976),
    (8, 0.0884, 0.0824, 0.0855),
    (9, 0.0784, 0.0736, 0.0761),
    (10, 0.0704, 0.0666, 0.0685),
];

pub fn entropy(a: f64) -> f64 {
    let t = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
    t(a) + t(1.0 - a)
}

/// `q h(Q/q)`.
pub fn cover(q_weight: f64, q: f64) -> f64 {
    q * entropy((q_weight / q).min(1.0))
}

pub fn q_upper(s: u32, q_weight: f64) -> f64 {
    (s as f64 * q_weight).min(1.0)
}

/// `y` with `Q (1 - y^s) / (1 - y) = q`, by bisection to machine resolution.
pub fn y_for(s: u32, q_weight: f64, q: f64) -> f64 {
    let f = |y: f64| q_weight * (0..s).map(|i| y.powi(i as i32)).sum::<f64>() - q;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The rate function in its textbook parametric form
/// `(1-q) log2(1-q) + q log2(Q y^s / (1-y)) + sQ log2((1-y)/y) + s h(Q)`,
/// evaluated at interior `q` only.
pub fn rate_function(s: u32, q_weight: f64, q: f64) -> f64 {
    let y = y_for(s, q_weight, q);
    let sf = s as f64;
    let one_q = if q < 1.0 { (1.0 - q) * (1.0 - q).log2() } else { 0.0 };
    one_q
        + q * (q_weight * y.powi(s as i32) / (1.0 - y)).log2()
        + sf * q_weight * ((1.0 - y) / y).log2()
        + sf * entropy(q_weight)
}

/// Minimum of `f` on `[lo, hi]`: dense grid, then golden section on the two
/// cells around the best node.
pub fn grid_min<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, grid: usize) -> (f64, f64) {
    let node = |i: usize| lo + (hi - lo) * i as f64 / grid as f64;
    let best = (0..=grid).min_by(|&a, &b| f(node(a)).total_cmp(&f(node(b)))).unwrap();
    let (mut a, mut b) = (node(best.saturating_sub(1)), node((best + 1).min(grid)));
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut x1, mut x2) = (b - g * (b - a), a + g * (b - a));
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > 1e-13 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (a + b);
    let (xb, fb) = (node(best), f(node(best)));
    if f(x) <= fb {
        (x, f(x))
    } else {
        (xb, fb)
    }
}

/// Interior of the union-fraction range, kept `1e-9` from both ends.
pub fn q_range(s: u32, q_weight: f64) -> (f64, f64) {
    (q_weight + 1e-9, q_upper(s, q_weight) - 1e-9)
}

/// `min_q A(s,Q,q) + L [h(Q) - q h(Q/q)]`: value and minimizer.
pub fn list_min(s: u32, l: u32, q_weight: f64) -> (f64, f64) {
    let (lo, hi) = q_range(s, q_weight);
    let hq = entropy(q_weight);
    let (q, v) = grid_min(
        |q| rate_function(s, q_weight, q) + l as f64 * (hq - cover(q_weight, q)),
        lo,
        hi,
        2000,
    );
    (v, q)
}

/// `min_q A(s,Q,q) + L [h(Q) - q h(Q/q) - R]^+`.
pub fn exponent_min(s: u32, l: u32, rate: f64, q_weight: f64) -> f64 {
    let (lo, hi) = q_range(s, q_weight);
    let hq = entropy(q_weight);
    grid_min(
        |q| rate_function(s, q_weight, q) + l as f64 * (hq - cover(q_weight, q) - rate).max(0.0),
        lo,
        hi,
        2000,
    )
    .1
}

/// Probability that the third of three independent uniform weight-`w`
/// columns of length `n` is covered by the union of the first two, by
/// listing all `C(n, w)^3` ordered triples.
pub fn triple_cover_fraction(n: u32, w: u32) -> f64 {
    let cols: Vec<u32> = (0u32..1 << n).filter(|c| c.count_ones() == w).collect();
    let mut hits = 0u64;
    for &a in &cols {
        for &b in &cols {
            for &c in &cols {
                if c & !(a | b) == 0 {
                    hits += 1;
                }
            }
        }
    }
    hits as f64 / (cols.len() as f64).powi(3)
}
