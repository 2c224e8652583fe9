pub mod cochain;
pub mod exactlin;
pub mod gradedalg;
pub mod matching;
pub mod matroid;
pub mod mobius;
pub mod tropical;
