//! k-set basics: insertion, meet, join and the subset order.

use ksubcover::KSet;

fn main() -> ksubcover::Result<()> {
    let x = KSet::empty(4, 2)?.insert(0, 1)?.insert(1, 2)?;
    let y = KSet::from_pairs(4, 2, &[(0, 1), (1, 1), (3, 2)])?;
    println!("x = {x}");
    println!("y = {y}");
    println!("x meet y = {}", x.meet(&y)?);
    // element 1 sits in different coordinates, so the join drops it
    println!("x join y = {}", x.join(&y)?);
    println!("meet is below x: {}", x.meet(&y)?.is_subset(&x)?);
    println!("supports: |x| = {}, |y| = {}", x.support_size(), y.support_size());

    if let Err(e) = x.insert(0, 2) {
        println!("re-inserting element 0: {e}");
    }
    Ok(())
}
