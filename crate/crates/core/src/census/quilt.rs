//! Tabular data for the region diagram: a labeled grid over the counting
//! rectangle and the boundary curves sampled for plotting.

use std::io::Write;

use serde::Serialize;

use super::{classify_point, CensusConfig, CensusError, RegionLabel};
use crate::real::report::ser_f64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuiltCell {
    #[serde(serialize_with = "ser_f64")]
    pub p: f64,
    #[serde(serialize_with = "ser_f64")]
    pub q: f64,
    /// `None` for a cell center lying on a boundary curve.
    pub label: Option<RegionLabel>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveId {
    /// `q = sqrt(-4p^3/27)`, `p < 0`: the discriminant vanishes.
    DiscriminantZero,
    /// `q = sqrt(-8p^3/27)`, `p < 0`: edge of discriminant-series convergence.
    DiscriminantSeriesLimit,
    /// `q = sqrt(4p^3/27)`, `p > 0`: edge of trinomial-series convergence.
    TrinomialSeriesLimit,
}

impl CurveId {
    pub const ALL: [CurveId; 3] =
        [CurveId::DiscriminantZero, CurveId::DiscriminantSeriesLimit, CurveId::TrinomialSeriesLimit];

    pub fn as_str(self) -> &'static str {
        match self {
            CurveId::DiscriminantZero => "discriminant_zero",
            CurveId::DiscriminantSeriesLimit => "discriminant_series_limit",
            CurveId::TrinomialSeriesLimit => "trinomial_series_limit",
        }
    }

    pub fn eval(self, p: f64) -> f64 {
        let factor = match self {
            CurveId::DiscriminantSeriesLimit => 8.0,
            _ => 4.0,
        };
        (factor * p.abs().powi(3) / 27.0).sqrt()
    }

    fn negative_p(self) -> bool {
        !matches!(self, CurveId::TrinomialSeriesLimit)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub curve: CurveId,
    #[serde(serialize_with = "ser_f64")]
    pub p: f64,
    #[serde(serialize_with = "ser_f64")]
    pub q: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Quilt {
    pub config: CensusConfig,
    pub grid: usize,
    pub cells: Vec<QuiltCell>,
    pub curves: Vec<CurvePoint>,
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl Quilt {
    /// Fraction of grid cells per label, indexed like `RegionLabel::ALL`,
    /// followed by the fraction of boundary cells.
    pub fn cell_fractions(&self) -> [f64; 5] {
        let mut counts = [0usize; 5];
        for c in &self.cells {
            counts[c.label.map_or(4, |l| l as usize)] += 1;
        }
        counts.map(|n| n as f64 / self.cells.len() as f64)
    }

    /// CSV with columns `p, q, label`.
    pub fn write_cells_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["p", "q", "label"])?;
        for c in &self.cells {
            let label = c.label.map_or("boundary", RegionLabel::as_str);
            out.write_record([fmt_f64(c.p).as_str(), fmt_f64(c.q).as_str(), label])?;
        }
        out.flush()?;
        Ok(())
    }

    /// CSV with columns `curve_id, p, q`.
    pub fn write_curves_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["curve_id", "p", "q"])?;
        for c in &self.curves {
            out.write_record([c.curve.as_str(), fmt_f64(c.p).as_str(), fmt_f64(c.q).as_str()])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Labels the centers of a `grid x grid` partition of the counting
/// rectangle and samples each boundary curve at `grid + 1` values of `p`,
/// keeping the points inside the rectangle.
pub fn quilt_data(cfg: &CensusConfig, grid: usize) -> Result<Quilt, CensusError> {
    if grid < 2 {
        return Err(CensusError::InvalidConfig(format!("grid must be at least 2, got {grid}")));
    }
    let (pm, qm) = cfg.rectangle();
    let g = grid as f64;
    let mut cells = Vec::with_capacity(grid * grid);
    for j in 0..grid {
        let q = (j as f64 + 0.5) * qm / g;
        for i in 0..grid {
            let p = -pm + (i as f64 + 0.5) * 2.0 * pm / g;
            cells.push(QuiltCell { p, q, label: classify_point(p, q).ok() });
        }
    }
    let mut curves = Vec::new();
    for curve in CurveId::ALL {
        for i in 0..=grid {
            let mag = i as f64 * pm / g;
            let p = if curve.negative_p() { -pm + mag } else { mag };
            let q = curve.eval(p);
            if q <= qm {
                curves.push(CurvePoint { curve, p, q });
            }
        }
    }
    Ok(Quilt { config: *cfg, grid, cells, curves })
}
