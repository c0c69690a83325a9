//! Explicit one-ended presentations: a single relator cycle made of blocks
//! w₁ⁱ tᵢ wᵢ t′ᵢ over the reduced words wᵢ of length L₀, plus its certificate.

mod build;
mod certificate;

pub use build::{compact_word, generate, full_word, GenMode, GenOptions, Generated};
pub use certificate::{gap_scan, verify, Coverage, GapScan, GeneratorCertificate};

/// Smallest even scale whose enumeration has at least 36 words, capped at 8.
pub fn adaptive_scale(fp: &crate::freeprod::FreeProduct) -> usize {
    let mut l0 = 2;
    while l0 < 8 && crate::freeprod::enumerate_reduced_words(l0, fp).len() < 36 {
        l0 += 2;
    }
    l0
}
