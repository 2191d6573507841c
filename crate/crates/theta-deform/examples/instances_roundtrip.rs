//! The instance file format: generation, saving, loading, validation,
//! and the field-path diagnostics tampered files produce.
//!
//! Run with: `cargo run --example instances_roundtrip`

use theta_deform::instance::{generate_torus_instance, Instance};

fn main() -> theta_deform::Result<()> {
    let instance = generate_torus_instance(4, 6)?;
    let dir = std::env::temp_dir();
    let path = dir.join("theta-deform-example-instance.json");
    instance.save(&path)?;
    println!("wrote {}", path.display());

    let loaded = Instance::load(&path)?;
    assert_eq!(loaded, instance, "round-trip must be lossless");
    let validated = loaded.validate()?;
    println!(
        "loaded '{}': order {}, {} vertices, translation: {}",
        validated.name,
        validated.action.order(),
        validated.geometry.as_ref().map_or(0, |g| g.vertices.len()),
        validated.translation.is_some(),
    );

    // validation pinpoints what is wrong and where
    println!("\ntampering experiments:");
    let mut broken = instance.clone();
    broken.deformation.j0 = vec![vec![0, 1], vec![1, 0]];
    report("non-skew J0", broken.validate().err());

    let mut broken = instance.clone();
    broken.schema = 99;
    report("wrong schema version", broken.validate().err());

    let mut broken = instance.clone();
    broken
        .complex
        .as_mut()
        .unwrap()
        .generator_vertex_perm
        .swap(0, 1);
    report("corrupted vertex permutation", broken.validate().err());

    let mut broken = instance.clone();
    broken.translation.as_mut().unwrap().shift[0] = "1/5".into();
    report(
        "translation not compatible with the group order",
        broken.validate().err(),
    );

    std::fs::remove_file(&path)?;
    Ok(())
}

fn report(what: &str, err: Option<theta_deform::Error>) {
    match err {
        Some(e) => println!("  {what}: {e}"),
        None => println!("  {what}: unexpectedly accepted!"),
    }
}
