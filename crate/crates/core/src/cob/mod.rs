//! The dotted cobordism category: planar objects in the disk or annulus,
//! normal-form cobordisms over `ℤ[α]`, gluing, and delooping.

mod alpha;
mod deloop;
mod glue;
mod morphism;
mod planar;

pub use alpha::AlphaPoly;
pub use glue::{glue_cobs, glue_objects, GluePlan, Port};
pub use morphism::{compose, evaluate_closed, half_swap, Cob, Component, CycleMap, Degree};
pub use planar::Planar;
pub use deloop::{cap_last, cup_last, deloop, deloop_class, k0_check, stack_plan, tensor_plan, Deloop};
