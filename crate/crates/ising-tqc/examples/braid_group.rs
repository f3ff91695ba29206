//! Braids act on Majorana operators as signed permutations. This prints the
//! action of a few braids, expands a nonlocal braid into nearest-neighbour
//! ones and counts the image group for small systems.

use ising_tqc::braids::{braid_word_nonlocal, braids_for_signed_permutation, conjugation_action, enumerate_image_group, SignedPermutation};

fn show(label: &str, perm: &SignedPermutation) {
    let images: Vec<String> = perm
        .0
        .iter()
        .enumerate()
        .map(|(r, &(t, s))| format!("c{} -> {}c{}", r + 1, if s < 0 { "-" } else { "" }, t))
        .collect();
    println!("{label}: {}", images.join(", "));
}

fn main() -> ising_tqc::Result<()> {
    let mut b = SignedPermutation::identity(4);
    b.then_braid(1, 2);
    show("B12", &b);

    let word = braid_word_nonlocal(1, 4, 6)?;
    println!("B14 as nearest-neighbour braids: {:?}", word.instructions());
    show("its action", &conjugation_action(&word)?);

    // any signed permutation with determinant +1 is a braid
    let target = SignedPermutation(vec![(3, -1), (1, -1), (2, 1), (4, 1)]);
    let c = braids_for_signed_permutation(&target)?;
    println!("synthesized {} braids for the signed 3-cycle", c.len());
    let odd = SignedPermutation(vec![(3, 1), (1, -1), (2, 1), (4, 1)]);
    println!("with one sign flipped: {}", braids_for_signed_permutation(&odd).unwrap_err());

    for n in [2, 4, 6] {
        println!("{n} modes: image group of order {}", enumerate_image_group(n)?.len());
    }
    Ok(())
}
