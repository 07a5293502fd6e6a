mod bound;
mod curve;
mod simulate;
mod table;
mod verify;

pub use bound::{bound, BoundArgs};
pub use curve::{curve, CurveArgs};
pub use simulate::{simulate, SimulateArgs};
pub use table::{table1, TableArgs};
pub use verify::{verify, VerifyArgs};
