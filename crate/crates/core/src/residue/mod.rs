//! Residue classes and their dynamics under the reduced map.

mod certificate;
mod class;
mod image;
mod julia;
mod orbit;
mod preimage;

pub use certificate::{
    wandering_domain_certificates, ComponentType, JuliaWitness, WanderingCertificate, PUSH_HORIZON,
};
pub use class::{class_of, GaloisClass, ResidueClass};
pub use image::{class_image, ClassImage};
pub use julia::{julia_class_growth, JuliaConclusion, JuliaGrowthReport};
pub use orbit::{
    class_orbit, class_orbit_in, push_past_bad, ClassOrbitReport, OrbitEntry, OrbitVerdict, PushedClass, StepStatus,
};
pub use preimage::{
    class_preimages, separability_decompose, ClassPreimages, PointSet, PreimageEntry, Separability,
};
