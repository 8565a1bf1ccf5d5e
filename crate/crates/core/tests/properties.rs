use std::collections::BTreeSet;

use proptest::prelude::*;

use xalpwb::instances::{GraphProblem, TcmcMode};
use xalpwb::machine::{parse_machine, serialize_machine};
use xalpwb::oracles::{graph_optimum_bruteforce, solve_bruteforce, solve_tcmc_bruteforce, solve_tcmc_traversal, treedp_optimum};
use xalpwb::reductions::lookup;
use xalpwb::verify::{default_profile, generate_instance, SizeProfile};
use xalpwb::{check_solution, parse_any, serialize_instance, validate_decomposition, Instance, LiftMap};

const FAMILIES: [&str; 12] = [
    "tcmc", "tcmis", "poscnf", "negcnf", "gencnf", "listcol", "precol", "is", "vc", "ds", "rbds", "atm",
];
const CAP: u128 = 1 << 22;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn instances_survive_the_text_format(family in prop::sample::select(&FAMILIES[..]), seed in any::<u64>()) {
        let inst = generate_instance(family, &SizeProfile::default(), seed).unwrap();
        let text = serialize_instance(&inst);
        prop_assert_eq!(parse_any(&text).unwrap(), inst);
    }

    #[test]
    fn machines_survive_the_text_format(seed in any::<u64>()) {
        let Instance::Atm(a) = generate_instance("atm", &SizeProfile::default(), seed).unwrap() else {
            unreachable!()
        };
        prop_assert_eq!(parse_machine(&serialize_machine(&a.machine)).unwrap(), a.machine);
    }

    #[test]
    fn parsers_never_panic(text in "(xalpwb 1\n)?[a-z0-9 <>*_:>\n-]{0,200}") {
        let _ = parse_any(&text);
        let _ = parse_machine(&text);
        let _ = LiftMap::parse(&text);
        let _ = xalpwb::parse_shape(&text);
    }

    #[test]
    fn lift_maps_round_trip(entries in prop::collection::vec(("[a-z][a-z0-9.]{0,6}", prop::collection::vec("[a-z][a-z0-9]{0,4}", 0..4)), 0..6)) {
        let mut m = LiftMap::default();
        for (s, t) in entries {
            m.push(s, t);
        }
        prop_assert_eq!(LiftMap::parse(&m.serialize()).unwrap(), m);
    }

    #[test]
    fn treedp_matches_enumeration(problem in prop::sample::select(&["is", "vc", "ds", "rbds"][..]), seed in any::<u64>()) {
        let p = SizeProfile { vertices: 11, ..SizeProfile::default() };
        let Instance::LogTw(g) = generate_instance(problem, &p, seed).unwrap() else { unreachable!() };
        let dp = treedp_optimum(&g, CAP).unwrap();
        let brute = graph_optimum_bruteforce(g.graph(), g.problem(), g.blue(), CAP).unwrap();
        prop_assert_eq!(dp, brute);
    }

    #[test]
    fn traversal_matches_enumeration(seed in any::<u64>(), clique in any::<bool>()) {
        let Instance::Tcmc(t) = generate_instance("tcmc", &SizeProfile::default(), seed).unwrap() else {
            unreachable!()
        };
        let mode = if clique { TcmcMode::Clique } else { TcmcMode::IndependentSet };
        let trav = solve_tcmc_traversal(&t, mode, CAP).unwrap();
        let brute = solve_tcmc_bruteforce(&t, mode, CAP).unwrap();
        prop_assert_eq!(trav, brute.is_some());
    }

    #[test]
    fn oracle_witnesses_check(family in prop::sample::select(&FAMILIES[..]), seed in any::<u64>()) {
        let inst = generate_instance(family, &SizeProfile::default(), seed).unwrap();
        if let Ok(Some(sol)) = solve_bruteforce(&inst, CAP) {
            prop_assert!(check_solution(&inst, &sol));
        }
    }

    #[test]
    fn witnesses_validate_and_respect_the_bound(
        name in prop::sample::select(&["tcmis-listcol", "listcol-precol", "poscnf-logtwis", "is-vc", "vc-rbds", "rbds-ds"][..]),
        seed in any::<u64>(),
    ) {
        let (family, profile) = default_profile(name).unwrap();
        let source = generate_instance(family, &profile, seed).unwrap();
        let art = lookup(name).unwrap().reduce(&source).unwrap();
        prop_assert!(art.growth_ok(), "{}", art.growth_line());
        let td = art.witness.as_ref().unwrap();
        let graph = match &art.target {
            Instance::LogTw(g) => g.graph().clone(),
            Instance::ListColoring(l) => l.graph().clone(),
            other => panic!("unexpected target {}", other.family()),
        };
        prop_assert!(validate_decomposition(&graph, td).is_ok());
    }

    #[test]
    fn complements_of_independent_sets_are_covers(seed in any::<u64>(), bits in any::<u16>()) {
        let Instance::LogTw(g) = generate_instance("is", &SizeProfile::default(), seed).unwrap() else {
            unreachable!()
        };
        let n = g.graph().n();
        let s: BTreeSet<usize> = (0..n).filter(|v| bits >> v & 1 == 1).collect();
        let rest: BTreeSet<usize> = (0..n).filter(|v| !s.contains(v)).collect();
        prop_assert_eq!(g.graph().is_independent(&s), g.graph().is_vertex_cover(&rest));
        prop_assert_eq!(g.problem(), GraphProblem::IndependentSet);
    }

    #[test]
    fn mutated_files_parse_or_fail_cleanly(
        family in prop::sample::select(&FAMILIES[..]),
        seed in any::<u64>(),
        edits in prop::collection::vec((any::<prop::sample::Index>(), 0u8..4, "[0-9a-z*<>_ -]{0,4}"), 1..4),
    ) {
        let inst = generate_instance(family, &SizeProfile::default(), seed).unwrap();
        let mut lines: Vec<String> = serialize_instance(&inst).lines().map(str::to_string).collect();
        for (at, op, tok) in edits {
            let i = at.index(lines.len());
            match op {
                0 => { lines.remove(i); }
                1 => lines.insert(i, tok),
                2 => lines[i].push_str(&format!(" {tok}")),
                _ => {
                    let mut words: Vec<&str> = lines[i].split_whitespace().collect();
                    if !words.is_empty() {
                        let j = at.index(words.len());
                        words[j] = &tok;
                    }
                    lines[i] = words.join(" ");
                }
            }
            if lines.is_empty() {
                break;
            }
        }
        let text = lines.join("\n");
        if let Ok(parsed) = parse_any(&text) {
            prop_assert_eq!(parse_any(&serialize_instance(&parsed)).unwrap(), parsed);
        }
        if let Ok(m) = parse_machine(&text) {
            prop_assert_eq!(parse_machine(&serialize_machine(&m)).unwrap(), m);
        }
    }
}
