//! Scalar-generic numeric kernels: descriptive statistics, vector operations,
//! special functions for p-values, and k-means clustering with silhouette
//! scoring.

pub mod kmeans;
pub mod special;
pub mod stats;
pub mod vec;
