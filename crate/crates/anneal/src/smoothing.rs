use std::collections::VecDeque;

use crate::error::AnnealError;

/// Smoothing menu for the matched scheduler. The memory parameter is a
/// window length for `MovingAverage` and a half-life in epochs for
/// `Exponential`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothing {
    Identity,
    MovingAverage { window: usize },
    Exponential { half_life: usize },
}

/// Stateful smoother over a scalar input stream.
///
/// Every variant emits a convex combination of the inputs seen so far, so
/// the output always stays within their running min and max, and a constant
/// stream is a fixed point.
#[derive(Debug, Clone)]
pub struct Smoother {
    kind: Smoothing,
    window: VecDeque<f64>,
    state: Option<f64>,
}

impl Smoother {
    pub fn new(kind: Smoothing) -> Result<Self, AnnealError> {
        match kind {
            Smoothing::MovingAverage { window: 0 } | Smoothing::Exponential { half_life: 0 } => {
                Err(AnnealError::ZeroMemory)
            }
            _ => Ok(Smoother {
                kind,
                window: VecDeque::new(),
                state: None,
            }),
        }
    }

    pub fn kind(&self) -> Smoothing {
        self.kind
    }

    /// Feeds one input and returns the smoothed value.
    pub fn apply(&mut self, value: f64) -> f64 {
        match self.kind {
            Smoothing::Identity => value,
            Smoothing::MovingAverage { window } => {
                if self.window.len() == window {
                    self.window.pop_front();
                }
                self.window.push_back(value);
                self.window.iter().sum::<f64>() / self.window.len() as f64
            }
            Smoothing::Exponential { half_life } => {
                let alpha = 1.0 - 0.5f64.powf(1.0 / half_life as f64);
                let next = match self.state {
                    None => value,
                    Some(current) => current + alpha * (value - current),
                };
                self.state = Some(next);
                next
            }
        }
    }
}
