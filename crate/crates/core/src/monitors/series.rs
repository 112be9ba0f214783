use serde::Serialize;

use super::spec::MonitorSpec;

/// Time samples of one monitor with the trapezoidal running integral.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonitorSeries {
    pub spec: MonitorSpec,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub running_integral: Vec<f64>,
}

impl MonitorSeries {
    pub fn new(spec: MonitorSpec) -> Self {
        Self {
            spec,
            times: Vec::new(),
            values: Vec::new(),
            running_integral: Vec::new(),
        }
    }

    pub fn from_samples(spec: MonitorSpec, times: Vec<f64>, values: Vec<f64>) -> Self {
        let mut s = Self::new(spec);
        for (t, v) in times.into_iter().zip(values) {
            s.push(t, v);
        }
        s
    }

    /// Appends a sample; times must increase.
    pub fn push(&mut self, t: f64, value: f64) {
        let integral = match (self.times.last(), self.values.last(), self.running_integral.last()) {
            (Some(&t0), Some(&v0), Some(&i0)) => {
                debug_assert!(t > t0, "monitor times must increase");
                i0 + 0.5 * (t - t0) * (v0 + value)
            }
            _ => 0.0,
        };
        self.times.push(t);
        self.values.push(value);
        self.running_integral.push(integral);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_integral(&self) -> f64 {
        self.running_integral.last().copied().unwrap_or(0.0)
    }

    pub fn final_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// CSV with the header `time,value,running_integral`.
    pub fn to_csv(&self) -> crate::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["time", "value", "running_integral"])
            .map_err(|e| crate::Error::Invariant(e.to_string()))?;
        for i in 0..self.len() {
            w.write_record([
                format!("{:.17e}", self.times[i]),
                format!("{:.17e}", self.values[i]),
                format!("{:.17e}", self.running_integral[i]),
            ])
            .map_err(|e| crate::Error::Invariant(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| crate::Error::Invariant(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| crate::Error::Invariant(e.to_string()))
    }
}

/// Cumulative trapezoidal integral, zero at the first sample.
pub fn trapezoid_running(times: &[f64], values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(times.len());
    let mut acc = 0.0;
    for i in 0..times.len() {
        if i > 0 {
            acc += 0.5 * (times[i] - times[i - 1]) * (values[i] + values[i - 1]);
        }
        out.push(acc);
    }
    out
}

/// Cumulative composite Simpson integral on uniformly spaced samples:
/// Simpson's rule on an even number of intervals, with the three-eighths
/// rule closing an odd count and the quadratic fit through the first
/// three samples covering the first interval. Falls back to the trapezoid on nonuniform
/// samples.
pub fn simpson_running(times: &[f64], values: &[f64]) -> Vec<f64> {
    let n = times.len();
    if n < 3 {
        return trapezoid_running(times, values);
    }
    let h = (times[n - 1] - times[0]) / (n - 1) as f64;
    let uniform = times
        .windows(2)
        .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs());
    if !uniform {
        return trapezoid_running(times, values);
    }
    let mut even = vec![0.0; n];
    for i in (2..n).step_by(2) {
        even[i] = even[i - 2] + h / 3.0 * (values[i - 2] + 4.0 * values[i - 1] + values[i]);
    }
    let mut out = vec![0.0; n];
    for i in 1..n {
        out[i] = if i % 2 == 0 {
            even[i]
        } else if i == 1 {
            h / 12.0 * (5.0 * values[0] + 8.0 * values[1] - values[2])
        } else {
            even[i - 3]
                + 3.0 * h / 8.0 * (values[i - 3] + 3.0 * values[i - 2] + 3.0 * values[i - 1] + values[i])
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monitors::spec::MonitorKind;

    #[test]
    fn running_integral_matches_trapezoid() {
        let t: Vec<f64> = (0..11).map(|i| i as f64 * 0.1).collect();
        let v: Vec<f64> = t.iter().map(|x| x * x).collect();
        let s = MonitorSeries::from_samples(MonitorSpec::new(MonitorKind::VorticityL32), t.clone(), v.clone());
        assert_eq!(s.running_integral, trapezoid_running(&t, &v));
    }

    #[test]
    fn simpson_is_exact_on_cubics() {
        for n in [4usize, 5, 6, 9] {
            let t: Vec<f64> = (0..n).map(|i| i as f64 * 0.25).collect();
            let v: Vec<f64> = t.iter().map(|x| x * x * x - x).collect();
            let s = simpson_running(&t, &v);
            for i in 2..n {
                let x = t[i];
                assert!((s[i] - (x.powi(4) / 4.0 - x * x / 2.0)).abs() < 1e-13, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn csv_header() {
        let mut s = MonitorSeries::new(MonitorSpec::new(MonitorKind::BkmSupNorm));
        s.push(0.0, 1.0);
        s.push(0.5, 3.0);
        let csv = s.to_csv().unwrap();
        assert!(csv.starts_with("time,value,running_integral\n"));
        assert_eq!(s.final_integral(), 1.0);
    }
}
