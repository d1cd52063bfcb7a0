//! Framing, autocorrelation and period-peak refinement.

mod acf;
mod frame;
mod peak;

pub use acf::{autocorr, autocorr_direct, double_autocorr, energy_normalized_acf, normalize_acf, Acf, SILENCE_ENERGY};
pub use frame::{frame_signal, FrameGeometry, FrameSeries};
pub use peak::{estimate_period, find_t0, refine_peak, LagRange, PeakRefinement, PeriodEstimate};
