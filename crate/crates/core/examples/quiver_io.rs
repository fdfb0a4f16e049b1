//! Reading and writing quivers as edge lists and JSON.

use quiverpoly::quiver::validate;
use quiverpoly::Quiver;

const DIAMOND: &str = "\
# two paths from 0 to 3, one doubled arrow
0 -> 1
0 -> 2
1 -> 3
2 -> 3
2 -> 3
";

fn main() -> quiverpoly::Result<()> {
    let q = Quiver::from_text(DIAMOND)?;
    println!("{:?}", validate(&q));
    println!("cycle rank {}", q.cycle_rank());

    let json = q.to_json()?;
    println!("{json}");
    assert_eq!(Quiver::parse_any(&json)?, q);
    assert_eq!(Quiver::parse_any(&q.to_text())?, q);

    match Quiver::from_text("0 -> 1\n1 -> 0\n") {
        Ok(q) => println!("two-cycle parses; acyclic = {}", validate(&q).acyclic),
        Err(e) => println!("two-cycle rejected: {e}"),
    }
    Ok(())
}
