use afpk::fraccalc::*;
use afpk::special::gamma;

fn main() {
    // caputo t^2, different error functionals, T=1 and T=2
    for big_t in [1.0f64, 2.0] {
        for metric in ["t=T/2", "l2", "l1"] {
            print!("T={big_t} {metric}: errs");
            let mut errs = Vec::new();
            for p in [64usize, 128, 256, 512] {
                let n = (big_t * p as f64) as usize;
                let g = TimeGrid::new(1.0 / p as f64, n).unwrap();
                let s = TimeSeries::from_fn(g, |t| t * t);
                let d = caputo_derivative(&s, 0.5).unwrap();
                let exact = |t: f64| gamma(3.0) / gamma(2.5) * t.powf(1.5);
                let err = match metric {
                    "t=T/2" => (d.values[n / 2] - exact(g.node(n / 2))).abs(),
                    "l2" => ((1..=n).map(|k| (d.values[k] - exact(g.node(k))).powi(2)).sum::<f64>() / n as f64).sqrt(),
                    _ => (1..=n).map(|k| (d.values[k] - exact(g.node(k))).abs()).sum::<f64>() / n as f64,
                };
                errs.push(err);
            }
            let rates: Vec<String> = errs.windows(2).map(|w| format!("{:.4}", (w[0] / w[1]).log2())).collect();
            println!(" rates={rates:?}");
        }
    }
}
