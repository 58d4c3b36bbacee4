use crate::csv::{Cell, CsvTable};
use crate::error::{Error, Result};

/// Measured quantities paired with a bound, one row per degree.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub label: String,
    pub degrees: Vec<usize>,
    pub measured: Vec<f64>,
    pub bound: Vec<f64>,
    /// `bound / measured`.
    pub ratio: Vec<f64>,
}

impl BoundReport {
    pub fn new(label: impl Into<String>, degrees: Vec<usize>, measured: Vec<f64>, bound: Vec<f64>) -> Result<Self> {
        if degrees.len() != measured.len() || degrees.len() != bound.len() {
            return Err(Error::Parameter("report columns differ in length".into()));
        }
        let ratio = bound.iter().zip(&measured).map(|(b, m)| b / m).collect();
        Ok(Self {
            label: label.into(),
            degrees,
            measured,
            bound,
            ratio,
        })
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Degrees where the measured value exceeds the bound.
    pub fn violations(&self) -> Vec<usize> {
        self.degrees
            .iter()
            .zip(self.measured.iter().zip(&self.bound))
            .filter(|(_, (m, b))| m > b)
            .map(|(n, _)| *n)
            .collect()
    }

    pub fn max_ratio(&self) -> f64 {
        self.ratio.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_ratio(&self) -> f64 {
        self.ratio.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn to_table(&self) -> CsvTable {
        let mut t = CsvTable::new(&["n", "measured", "bound", "ratio"]);
        for i in 0..self.len() {
            t.push(&[
                Cell::from(self.degrees[i]),
                self.measured[i].into(),
                self.bound[i].into(),
                self.ratio[i].into(),
            ]);
        }
        t
    }

    pub fn to_csv(&self) -> String {
        self.to_table().render()
    }
}
