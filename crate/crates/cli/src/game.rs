//! Game sessions between a human and the engine.

use nimors::graph::{Action, Edge, Move};
use nimors::Graph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Human,
    Engine,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Human => Player::Engine,
            Player::Engine => Player::Human,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineSide {
    First,
    #[default]
    Second,
}

#[derive(Clone, Debug)]
pub struct Ply {
    pub by: Player,
    pub mv: Move,
    pub result: Graph,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("the game is over")]
    Finished,
    #[error("it is the {0:?} player's turn")]
    OutOfTurn(Player),
    #[error("illegal move: {0}")]
    Illegal(String),
}

#[derive(Clone, Debug)]
pub struct Session {
    pub initial: Graph,
    pub current: Graph,
    pub history: Vec<Ply>,
    pub to_move: Player,
    pub engine_side: EngineSide,
}

impl Session {
    pub fn new(graph: Graph, engine_side: EngineSide) -> Session {
        let to_move = match engine_side {
            EngineSide::First => Player::Engine,
            EngineSide::Second => Player::Human,
        };
        Session { initial: graph.clone(), current: graph, history: Vec::new(), to_move, engine_side }
    }

    pub fn finished(&self) -> bool {
        self.current.m() == 0
    }

    /// Under normal play the player left without a move loses.
    pub fn winner(&self) -> Option<Player> {
        self.finished().then(|| self.to_move.other())
    }

    pub fn play(&mut self, by: Player, mv: Move) -> Result<(), GameError> {
        if self.finished() {
            return Err(GameError::Finished);
        }
        if by != self.to_move {
            return Err(GameError::OutOfTurn(self.to_move));
        }
        let result = self.current.apply(mv).map_err(|e| GameError::Illegal(e.to_string()))?;
        self.current = result.clone();
        self.history.push(Ply { by, mv, result });
        self.to_move = by.other();
        Ok(())
    }

    /// Replays the history from the initial graph.
    pub fn replay(&self) -> Graph {
        self.history.iter().fold(self.initial.clone(), |g, ply| g.apply(ply.mv).expect("history holds legal moves"))
    }
}

/// Validates raw endpoints against a graph before building an [`Edge`].
pub fn edge_in(g: &Graph, u: usize, v: usize) -> Result<Edge, GameError> {
    if u == v || u >= g.n() || v >= g.n() {
        return Err(GameError::Illegal(format!("({u}, {v}) is not an edge of a {}-vertex graph", g.n())));
    }
    if !g.has_edge(u, v) {
        return Err(GameError::Illegal(format!("edge {u}-{v} is not present")));
    }
    Ok(Edge::new(u, v))
}

pub fn parse_action(s: &str) -> Option<Action> {
    match s {
        "delete" => Some(Action::Delete),
        "contract" => Some(Action::Contract),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nimors::graph::families::cycle;

    #[test]
    fn turn_order_and_winner() {
        let mut s = Session::new(cycle(3), EngineSide::Second);
        let e01 = Move::new(Edge::new(0, 1), Action::Contract);
        assert_eq!(s.play(Player::Engine, e01), Err(GameError::OutOfTurn(Player::Human)));
        s.play(Player::Human, e01).unwrap();
        assert_eq!(s.current.m(), 1);
        let last = Move::new(s.current.edges().next().unwrap(), Action::Delete);
        s.play(Player::Engine, last).unwrap();
        assert!(s.finished());
        assert_eq!(s.winner(), Some(Player::Engine));
        assert_eq!(s.play(Player::Human, last), Err(GameError::Finished));
        assert_eq!(s.replay(), s.current);
    }

    #[test]
    fn edge_checks() {
        let g = cycle(4);
        assert!(edge_in(&g, 0, 2).is_err());
        assert!(edge_in(&g, 1, 1).is_err());
        assert!(edge_in(&g, 0, 9).is_err());
        assert_eq!(edge_in(&g, 3, 0).unwrap(), Edge::new(0, 3));
    }
}
