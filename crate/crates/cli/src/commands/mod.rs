pub mod estimate;
pub mod evaluate;
pub mod ingest;
pub mod rank;
pub mod report;
