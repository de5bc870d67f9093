use std::fmt;
use std::io::Write;

use crate::cutgen::Inequality;
use crate::exact::{Mixed, Rational};

/// One solver event. Column numbers and basis positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    Pivot {
        number: usize,
        enter: usize,
        leave: usize,
        position: usize,
        objective: Rational,
        y: Vec<Rational>,
    },
    Cut {
        number: usize,
        column: usize,
        /// Source coordinate label (`y0` is the lifted objective variable).
        source_label: usize,
        inequality: Inequality,
    },
    Optimum {
        round: usize,
        objective: Rational,
        y: Vec<Rational>,
        integral: bool,
    },
}

fn write_vector(f: &mut fmt::Formatter<'_>, y: &[Rational]) -> fmt::Result {
    f.write_str("(")?;
    for (k, q) in y.iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{q}")?;
    }
    f.write_str(")")
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::Pivot {
                number,
                enter,
                leave,
                position,
                objective,
                y,
            } => {
                write!(
                    f,
                    "PIVOT {number} enter={enter} leave={leave} pos={position} z={} y=",
                    Mixed(objective)
                )?;
                write_vector(f, y)
            }
            TraceEvent::Cut {
                number,
                column,
                source_label,
                inequality,
            } => write!(
                f,
                "CUT {number} col={column} source=y{source_label} {inequality}"
            ),
            TraceEvent::Optimum {
                round,
                objective,
                y,
                integral,
            } => {
                write!(f, "OPT {round} z={} y=", Mixed(objective))?;
                write_vector(f, y)?;
                if *integral {
                    f.write_str(" integral")?;
                }
                Ok(())
            }
        }
    }
}

/// Receives solver events as they happen.
pub trait TraceSink {
    fn event(&mut self, event: &TraceEvent);
}

/// Discards every event.
pub struct NoTrace;

impl TraceSink for NoTrace {
    fn event(&mut self, _: &TraceEvent) {}
}

impl<F: FnMut(&TraceEvent)> TraceSink for F {
    fn event(&mut self, event: &TraceEvent) {
        self(event)
    }
}

impl TraceSink for Vec<TraceEvent> {
    fn event(&mut self, event: &TraceEvent) {
        self.push(event.clone());
    }
}

/// Writes one line per event; write errors are ignored.
pub struct LineSink<W: Write>(pub W);

impl<W: Write> TraceSink for LineSink<W> {
    fn event(&mut self, event: &TraceEvent) {
        let _ = writeln!(self.0, "{event}");
    }
}
