//! Replays recorded games against the oracle: whenever the engine stood on a
//! winning position, its move must have left the human lost.

use nimcash_core::{Cash, GameState, Oracle, Player, RuleSet};
use nimcash_service::{GameSession, SessionStore, Status};

fn audit(session: &GameSession, oracle: &mut Oracle) -> usize {
    let engine = session.human.opponent();
    let mut state = session.initial;
    let mut checked = 0;
    for ply in &session.history {
        let next = state.apply_move(ply.take, &session.rules).unwrap();
        if ply.player == engine && oracle.mover_wins(&state) {
            assert!(
                !oracle.mover_wins(&next),
                "engine took {} at {state} and gave away a won game (A={})",
                ply.take,
                session.rules
            );
            checked += 1;
        }
        state = next;
    }
    assert_eq!(state, session.state);
    checked
}

// deterministic human: cycles through its legal moves
fn play_out(store: &SessionStore, session: GameSession, seed: usize) -> GameSession {
    let mut s = session;
    let mut turn = seed;
    while s.status == Status::InProgress {
        let legal = s.state.legal_moves(&s.rules);
        turn = turn.wrapping_mul(31).wrapping_add(7);
        s = store.play(&s.id, legal[turn % legal.len()]).unwrap();
    }
    s
}

#[test]
fn engine_never_squanders_a_win() {
    let store = SessionStore::new();
    let mut audited = 0;
    for (a, n, d, e) in [
        ("1,3,4", 20, 12, 12),
        ("1,6", 43, 27, 28),
        ("1,4,5", 48, 28, 27),
        ("1,2", 30, 16, 14),
        ("2,5", 40, 25, 21),
        ("1,3,4", 60, 40, 35),
    ] {
        let rules: RuleSet = a.parse().unwrap();
        let mut oracle = Oracle::new(rules.clone());
        for human in [Player::P1, Player::P2] {
            for seed in 0..6 {
                let s = store
                    .create(rules.clone(), n, Cash::Finite(d), Cash::Finite(e), human)
                    .unwrap();
                let s = play_out(&store, s, seed);
                audited += audit(&s, &mut oracle);
                let Status::Won { winner } = s.status else {
                    unreachable!()
                };
                assert!(GameState::is_terminal(&s.state, &s.rules));
                assert_eq!(winner, s.state.to_move.opponent());
            }
        }
    }
    assert!(audited > 100, "only {audited} engine moves audited");
}

#[test]
fn engine_wins_every_won_opening() {
    let store = SessionStore::new();
    let rules: RuleSet = "1,3,4".parse().unwrap();
    let mut oracle = Oracle::new(rules.clone());
    for d in 0..=14 {
        for e in 0..=14 {
            let opening = GameState::new(20, Cash::Finite(d), Cash::Finite(e));
            let engine_wins = oracle.winner(&opening) == Player::P2;
            let s = store
                .create(
                    rules.clone(),
                    20,
                    Cash::Finite(d),
                    Cash::Finite(e),
                    Player::P1,
                )
                .unwrap();
            let s = play_out(&store, s, (d * 15 + e) as usize);
            if engine_wins {
                assert_eq!(s.status, Status::Won { winner: Player::P2 }, "d={d} e={e}");
            }
        }
    }
}
