use super::records::SweepRecord;

/// Point where an estimate curve crosses 1/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub p: f64,
    /// Delta-method standard error: `sqrt(1/(4 trials)) / slope`.
    pub std_err: f64,
}

/// First crossing of 1/2 by the records of `property`, linearly
/// interpolated between consecutive parameter points.
pub fn half_crossing(records: &[SweepRecord], property: &str) -> Option<Crossing> {
    let mut pts: Vec<&SweepRecord> = records.iter().filter(|r| r.property == property).collect();
    pts.sort_by(|a, b| a.param.total_cmp(&b.param));
    pts.windows(2).find_map(|w| {
        let (a, b) = (w[0], w[1]);
        if a.estimate > 0.5 || b.estimate < 0.5 || a.estimate == b.estimate {
            return None;
        }
        let slope = (b.estimate - a.estimate) / (b.param - a.param);
        let p = a.param + (0.5 - a.estimate) / slope;
        let trials = a.trials.min(b.trials) as f64;
        Some(Crossing {
            p,
            std_err: (0.25 / trials).sqrt() / slope,
        })
    })
}

/// gnuplot commands plotting estimate against parameter for each property in `data_file`.
pub fn gnuplot_script(records: &[SweepRecord], data_file: &str) -> String {
    let mut props: Vec<&str> = records.iter().map(|r| r.property.as_str()).collect();
    props.dedup();
    props.sort_unstable();
    props.dedup();
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set key left top\n");
    s.push_str("set xlabel 'parameter'\nset ylabel 'estimate'\nset yrange [0:1.05]\n");
    let plots: Vec<String> = props
        .iter()
        .map(|p| {
            format!(
                "'{data_file}' using (strcol(5) eq '{p}' ? $4 : 1/0):6:7 with yerrorlines title '{p}'"
            )
        })
        .collect();
    if !plots.is_empty() {
        s.push_str("plot ");
        s.push_str(&plots.join(", \\\n     "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(param: f64, estimate: f64) -> SweepRecord {
        SweepRecord {
            family: "erdos_renyi".into(),
            n_or_l: 100.0,
            r: 1,
            param,
            property: "r_connected".into(),
            estimate,
            ci_halfwidth: 0.0,
            trials: 100,
            seed_lo: 0,
            seed_hi: 99,
            flags: String::new(),
        }
    }

    #[test]
    fn interpolates() {
        let recs = [rec(0.1, 0.0), rec(0.2, 0.25), rec(0.3, 0.75), rec(0.4, 1.0)];
        let c = half_crossing(&recs, "r_connected").unwrap();
        assert!((c.p - 0.25).abs() < 1e-12);
        // slope 5, sqrt(0.25 / 100) = 0.05
        assert!((c.std_err - 0.01).abs() < 1e-12);
        assert!(half_crossing(&recs[..1], "r_connected").is_none());
        assert!(half_crossing(&recs, "r_robust").is_none());
    }

    #[test]
    fn script_mentions_each_property() {
        let s = gnuplot_script(&[rec(0.1, 0.0)], "out.csv");
        assert!(s.contains("'out.csv'") && s.contains("r_connected"));
    }
}
