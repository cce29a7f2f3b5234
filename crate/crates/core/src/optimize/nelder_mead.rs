//! Nelder–Mead simplex search (minimization) on `R^N`.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    /// Stop once the spread of simplex values is at most this.
    pub f_tol: f64,
    /// ...and the simplex diameter is at most this.
    pub x_tol: f64,
    pub max_iterations: usize,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadResult<const N: usize> {
    pub x: [f64; N],
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
}

fn combine<const N: usize>(a: &[f64; N], b: &[f64; N], t: f64) -> [f64; N] {
    // a + t (b − a)
    std::array::from_fn(|i| a[i] + t * (b[i] - a[i]))
}

pub fn nelder_mead<const N: usize>(
    mut f: impl FnMut(&[f64; N]) -> f64,
    start: [f64; N],
    opts: &NelderMeadOptions,
) -> NelderMeadResult<N> {
    let mut evaluations = 0usize;
    let mut eval = |x: &[f64; N]| {
        evaluations += 1;
        f(x)
    };

    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    simplex.push((start, eval(&start)));
    for i in 0..N {
        let mut v = start;
        v[i] += opts.initial_step;
        simplex.push((v, eval(&v)));
    }

    let mut iterations = 0;
    let mut converged = false;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[N].1 - simplex[0].1;
        let diameter = simplex[1..]
            .iter()
            .map(|(v, _)| v.iter().zip(simplex[0].0.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread <= opts.f_tol && diameter <= opts.x_tol {
            converged = true;
            break;
        }
        if iterations >= opts.max_iterations {
            break;
        }
        iterations += 1;

        let centroid: [f64; N] =
            std::array::from_fn(|i| simplex[..N].iter().map(|(v, _)| v[i]).sum::<f64>() / N as f64);
        let (worst, f_worst) = simplex[N];
        let f_best = simplex[0].1;
        let f_second = simplex[N - 1].1;

        let reflected = combine(&centroid, &worst, -1.0);
        let f_r = eval(&reflected);
        if f_r < f_best {
            let expanded = combine(&centroid, &worst, -2.0);
            let f_e = eval(&expanded);
            simplex[N] = if f_e < f_r { (expanded, f_e) } else { (reflected, f_r) };
            continue;
        }
        if f_r < f_second {
            simplex[N] = (reflected, f_r);
            continue;
        }
        let (contracted, f_c) = if f_r < f_worst {
            let c = combine(&centroid, &reflected, 0.5);
            let fc = eval(&c);
            (c, if fc <= f_r { fc } else { f64::INFINITY })
        } else {
            let c = combine(&centroid, &worst, 0.5);
            let fc = eval(&c);
            (c, if fc < f_worst { fc } else { f64::INFINITY })
        };
        if f_c.is_finite() {
            simplex[N] = (contracted, f_c);
            continue;
        }
        let best = simplex[0].0;
        for entry in simplex.iter_mut().skip(1) {
            let v = combine(&best, &entry.0, 0.5);
            *entry = (v, eval(&v));
        }
    }

    let (x, fx) = simplex[0];
    NelderMeadResult {
        x,
        f: fx,
        iterations,
        evaluations,
        converged,
    }
}
