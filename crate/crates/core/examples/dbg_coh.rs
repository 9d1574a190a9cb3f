use twostar_core::cohomology::*;
use twostar_core::grp::GroupTable;
use twostar_core::modrep::{generating_set, irreducible_modules, ActionModule};

fn main() {
    let c4 = GroupTable::cyclic(4);
    let m = ActionModule::trivial(2, generating_set(&c4));
    let rho = m.element_matrices(&c4);
    let z2 = cocycle_space(&c4, &m);
    let b2 = coboundary_space(&c4, &m);
    println!("C4 trivial GF2: dim Z2 = {}, dim B2 = {}", z2.len(), b2.len());
    for (i, c) in b2.iter().enumerate() {
        println!("  b2[{i}] coords = {:?} verify = {:?}", c.coords.entries(), c.verify(&c4, &rho));
    }
    for (i, c) in z2.iter().enumerate() {
        println!("  z2[{i}] verify = {:?}", c.verify(&c4, &rho));
    }

    let c3 = GroupTable::cyclic(3);
    let mods = irreducible_modules(&c3, 2, 2);
    let w = mods.iter().find(|m| m.dim == 2).unwrap();
    println!("W mats: {:?}", w.mats);
    let z2 = cocycle_space(&c3, w);
    let b2 = coboundary_space(&c3, w);
    println!("C3 W: dim Z2 = {}, dim B2 = {}", z2.len(), b2.len());
    let rho = w.element_matrices(&c3);
    for (i, c) in b2.iter().enumerate() {
        println!("  b2[{i}] verify = {:?}", c.verify(&c3, &rho));
    }
}
