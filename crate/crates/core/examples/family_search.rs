use std::time::Instant;

use nilcx::ceq::{family_instantiate, format_equations, search_case, FamilyId, SearchOptions};

fn main() {
    let arg = |i: usize, d: usize| std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(d);
    let opts = SearchOptions::small_rationals(arg(1, 6), arg(2, 3));
    let only: Option<FamilyId> = std::env::args().nth(3).and_then(|s| s.parse().ok());
    for family in FamilyId::ALL.into_iter().filter(|f| only.is_none_or(|o| o == *f)) {
        for case in family.cases() {
            let t = Instant::now();
            let hit = search_case(case, &opts);
            println!("{family} ({}) {:?}: {:?}", case.label, case.ascending_type, t.elapsed());
            if let Some(p) = hit {
                println!("  {p}");
                print!("{}", format_equations(&family_instantiate(&p)));
            }
        }
    }
}
