//! Selberg zeta functions twisted by Tate motives: symbolic functional
//! equations, multiple sine normal forms, and certified numerics.

pub mod motive;
pub mod numerics;
pub mod sign;
pub mod sine;
pub mod spaces;
pub mod zeta;
