//! Spectral factor toolkit.
//!
//! Trains an Itakura-Saito variational autoencoder on synthetic
//! source-filter speech power spectra, identifies orthogonal latent
//! subspaces encoding the fundamental frequency and the first three formant
//! frequencies, controls those factors through piecewise-linear regression
//! in the learned subspaces, and estimates the fundamental frequency by
//! KL-projection against a labeled reference dictionary.
//!
//! Module map:
//! - [`numerics`]: deterministic linear algebra, Adam, backprop primitives
//! - [`synth`]: source-filter frame synthesizer and labeled datasets
//! - [`vae`]: Itakura-Saito VAE model, ELBO, training loop, checkpoints
//! - [`subspace`]: biased-aggregated-posterior subspace identification
//! - [`control`]: factor regression and latent-space transformations
//! - [`pitch`]: KL-projection f0 estimation and the pitch-error metric
//! - [`harness`]: independent spectral measurement and experiment drivers
//! - [`sft1`]: binary array container used by every pipeline artifact
//! - [`config`]: declarative pipeline configuration

pub mod config;
pub mod control;
pub mod harness;
pub mod numerics;
pub mod pitch;
pub mod sft1;
pub mod subspace;
pub mod synth;
pub mod vae;
