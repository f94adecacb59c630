use hecke_forge::parahoric::*;
use hecke_forge::weyl::*;

fn main() {
    let desc = GroupDescriptor::new(GroupKind::SoOdd, 7).unwrap();
    let omega = IntervalPartition::from_subset(3, &[2]).unwrap(); // {0},{1},{2,3}
    // alpha = 2 with multiplicity 2 => j0 = block {2,3} (index 2), j1 = block {1}
    for (p, e, q) in [(7u64, 1u32, 29u64), (7, 2, 29), (5, 1, 11), (3, 1, 13)] {
        let datum = match ParahoricDatum::new(desc, omega.clone(), 2, 1, p, e, q % p.pow(e)) {
            Ok(d) => d, Err(er) => { println!("p={} datum err {:?}", p, er); continue; }
        };
        let comps = vec![
            ComponentSpec::Unramified { theta_subset: vec![2], chi: vec![1, 3, 2] },
            ComponentSpec::SteinbergRamified { theta_subset: vec![2], st_block: 2, chi: vec![1, 3, 2] },
        ];
        match apply_projector(&datum, &comps, 2) {
            Ok(rep) => {
                println!("p={} e={} q={} profile={:?} image_total={} unram_total={}", p, e, q, rep.profile, rep.image_dim_total, rep.unramified_dim_total);
                for c in &rep.components {
                    println!("  {}: basis {} survivors {} image {} pimage {}/{} wprime_match {:?}",
                        c.kind, c.basis_size, c.survivor_windows.len(), c.image_dim,
                        c.parahoric_image_dim, c.parahoric_dim, c.w_prime_matches);
                }
            }
            Err(e2) => println!("p={} e={} q={} error {:?}", p, e, q, e2),
        }
    }
}
