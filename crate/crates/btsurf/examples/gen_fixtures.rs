//! Regenerates the shipped fixture files from the built-in complexes.
//!
//! ```text
//! cargo run -p btsurf --example gen_fixtures
//! ```

use std::path::PathBuf;

use btsurf::formats;
use btsurf_core::fixtures;
use btsurf_core::group::{Perm, PermRep};
use btsurf_core::manifold::fundamental_group;

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    std::fs::create_dir_all(&dir).expect("create fixtures directory");
    let write = |name: &str, content: String| {
        let path = dir.join(name);
        std::fs::write(&path, content).expect("write fixture");
        println!("wrote {}", path.display());
    };

    let solid_torus = fixtures::solid_torus();
    write("solid_torus.tri", formats::write_triangulation(&solid_torus));
    write("fiber.surf", formats::write_surface(&fixtures::fiber_surface()));
    write(
        "fiber.coor",
        formats::write_coorientation(&fixtures::fiber_coorientation()),
    );
    let dual_st = fundamental_group(&solid_torus).expect("valid");
    write(
        "trivial.perm",
        formats::write_perm_rep(
            &PermRep::trivial(dual_st.num_generators()),
            dual_st.presentation(),
        ),
    );

    let handlebody = fixtures::handlebody();
    write("handlebody.tri", formats::write_triangulation(&handlebody));
    write(
        "sepdisc.surf",
        formats::write_surface(&fixtures::separating_disc()),
    );
    write(
        "sepdisc.coor",
        formats::write_coorientation(&fixtures::separating_disc_coorientation()),
    );
    let dual_hb = fundamental_group(&handlebody).expect("valid");
    let swap = Perm::from_images(vec![1, 0]).expect("permutation");
    let double = PermRep::new(2, vec![swap.clone(), swap]).expect("rep");
    write(
        "double.perm",
        formats::write_perm_rep(&double, dual_hb.presentation()),
    );

    write(
        "closed_one_tet.tri",
        formats::write_triangulation(&fixtures::closed_one_tet()),
    );
    write(
        "vertex_link.surf",
        formats::write_surface(&fixtures::vertex_link_sphere()),
    );
}
