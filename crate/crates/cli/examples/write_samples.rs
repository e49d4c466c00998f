//! Writes the sample inputs used in the README to `data/`.

use std::fs;
use std::path::Path;

use tangal::csep::FrobeniusMonoid;
use tangal::gset::GSet;
use tangal::rep::Representation;
use tangal::{Algebra, Field, FiniteGroup, HopfAlgebra, Poly};

fn write(dir: &Path, name: &str, v: impl serde::Serialize) {
    let text = serde_json::to_string(&v).unwrap();
    fs::write(dir.join(name), text + "\n").unwrap();
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    fs::create_dir_all(&dir).unwrap();
    let f2 = Field::new(2, 1).unwrap();
    let f5 = Field::new(5, 1).unwrap();
    write(&dir, "mu6_f2.json", HopfAlgebra::mu(6, &f2).unwrap().to_json());
    write(&dir, "k3_f5.json", Algebra::diagonal(&f5, 3).to_json());
    write(&dir, "constant_s3_f7.json", HopfAlgebra::constant(&FiniteGroup::symmetric(3), &Field::new(7, 1).unwrap()).to_json());
    let s3 = FiniteGroup::symmetric(3);
    write(&dir, "s3.json", s3.to_json());
    write(&dir, "z12.json", FiniteGroup::cyclic(12).to_json());
    let h = s3.subgroups().into_iter().find(|h| h.len() == 2).unwrap();
    write(&dir, "s3_cosets.json", GSet::cosets(&s3, &h).unwrap().to_json());
    write(&dir, "empty_z2.json", GSet::empty(&FiniteGroup::cyclic(2)).to_json());
    let z3 = FiniteGroup::cyclic(3);
    let f4 = Algebra::quotient_poly(&Poly::new(&f2, vec![1, 1, 1])).unwrap();
    let m = FrobeniusMonoid::from_separable_algebra(Representation::trivial(&z3, &f2, 2), &f4).unwrap();
    write(&dir, "f4_over_f2_monoid.json", m.to_json());
}
