//! Cycle time and throughput of a repeating production line, then the
//! effect of speeding up the bottleneck station.

use tropical::io::parse_schedule;
use tropical::TaskGraph;

fn report(label: &str, g: &TaskGraph) -> tropical::Result<()> {
    let lambda = g.cycle_time()?;
    println!(
        "{label}: cycle time {lambda} = {:.1} s, {:.0} items/hour",
        lambda.as_f64(),
        3600.0 * g.throughput()?
    );
    Ok(())
}

fn main() -> tropical::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/production.sched");
    let text = std::fs::read_to_string(path).map_err(|e| tropical::Error::InvalidArgument(e.to_string()))?;
    let mut line = parse_schedule(&text)?;

    let r = line.solve(0)?;
    println!("first item leaves after {} s", r.makespan);
    report("baseline", &line)?;

    let weld = line.names().iter().position(|n| n == "Weld").expect("fixture has a Weld station");
    line.set_duration(weld, 15)?;
    report("weld 15 s", &line)?;
    Ok(())
}
