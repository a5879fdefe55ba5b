use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Mutex;

use crate::algebra::{GenId, GroupSpec, Letter, Word, Z};

/// Positive words as plain letter strings.
type Pos = Vec<GenId>;

fn positive_letters(w: &Word) -> Pos {
    w.letters().into_iter().map(|(g, _)| g).collect()
}

fn relation_pairs(spec: &GroupSpec) -> Vec<(Pos, Pos)> {
    let mut out = Vec::new();
    for (l, r) in &spec.braid_relations {
        let (l, r) = (positive_letters(l), positive_letters(r));
        out.push((l.clone(), r.clone()));
        out.push((r, l));
    }
    out
}

fn find_all<'a>(hay: &'a [GenId], needle: &[GenId]) -> impl Iterator<Item = usize> + 'a {
    let needle = needle.to_vec();
    (0..=hay.len().saturating_sub(needle.len()))
        .filter(move |&i| hay.len() >= needle.len() && hay[i..i + needle.len()] == needle[..])
}

/// All positive words equal to `w` in the positive braid monoid.
pub(crate) fn braid_class(w: &[GenId], pairs: &[(Pos, Pos)]) -> HashSet<Pos> {
    let mut seen: HashSet<Pos> = HashSet::new();
    seen.insert(w.to_vec());
    let mut stack = vec![w.to_vec()];
    while let Some(x) = stack.pop() {
        for (l, r) in pairs {
            let hits: Vec<usize> = find_all(&x, l).collect();
            for i in hits {
                let mut y = x[..i].to_vec();
                y.extend_from_slice(r);
                y.extend_from_slice(&x[i + l.len()..]);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
    }
    seen
}

/// Words reachable from `w` by at most `depth` single braid substitutions on
/// positive sub-words. Always contains `w`.
pub fn braid_neighbors(spec: &GroupSpec, w: &Word, depth: usize) -> BTreeSet<Word> {
    let pairs = relation_pairs(spec);
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    seen.insert(w.clone());
    let mut frontier = vec![w.clone()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for x in &frontier {
            let letters = x.letters();
            for (l, r) in &pairs {
                if l.len() > letters.len() {
                    continue;
                }
                for i in 0..=letters.len() - l.len() {
                    let window = &letters[i..i + l.len()];
                    if window.iter().zip(l).all(|(&(g, e), &h)| g == h && e == 1) {
                        let mut y: Vec<Letter> = letters[..i].to_vec();
                        y.extend(r.iter().map(|&g| (g, 1)));
                        y.extend_from_slice(&letters[i + l.len()..]);
                        let y = Word::from_letters(&y);
                        if seen.insert(y.clone()) {
                            next.push(y);
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Canonical key of a signed word in the braid group: the power of the
/// centre pulled out, and the least representative of the remaining
/// positive braid.
pub(crate) type Key = (i32, Pos);

/// Computes [`Key`]s. Inverse letters become `z⁻¹·P_g` with `g·P_g = z`,
/// then full copies of the centre are peeled off the positive part.
pub(crate) struct Keyer {
    pairs: Vec<(Pos, Pos)>,
    zlen: usize,
    zclass: HashSet<Pos>,
    cofactor: HashMap<GenId, Pos>,
    center: Pos,
    memo: Mutex<HashMap<(i32, Vec<Letter>), Key>>,
}

impl Keyer {
    pub fn new(spec: &GroupSpec) -> Self {
        let pairs = relation_pairs(spec);
        let center = positive_letters(&spec.center_word);
        let zclass = braid_class(&center, &pairs);
        let mut cofactor = HashMap::new();
        let mut sorted: Vec<&Pos> = zclass.iter().collect();
        sorted.sort();
        for x in sorted {
            cofactor.entry(x[0]).or_insert_with(|| x[1..].to_vec());
        }
        Self {
            pairs,
            zlen: center.len(),
            zclass,
            cofactor,
            center,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// Key of `z^q · w`, where `w` may itself contain central letters.
    pub fn key(&self, q: i32, w: &Word) -> Key {
        let letters = w.letters();
        if let Some(k) = self.memo.lock().unwrap().get(&(q, letters.clone())) {
            return k.clone();
        }
        let mut q0 = q;
        let mut pos: Pos = Vec::new();
        for &(g, e) in &letters {
            if g == Z {
                q0 += e as i32;
            } else if e > 0 {
                pos.push(g);
            } else {
                q0 -= 1;
                pos.extend_from_slice(&self.cofactor[&g]);
            }
        }
        let out = loop {
            let cls = braid_class(&pos, &self.pairs);
            let hit = cls
                .iter()
                .filter(|y| y.len() >= self.zlen && self.zclass.contains(&y[..self.zlen]))
                .min()
                .cloned();
            match hit {
                Some(y) => {
                    q0 += 1;
                    pos = y[self.zlen..].to_vec();
                }
                None => break (q0, cls.into_iter().min().unwrap()),
            }
        };
        self.memo.lock().unwrap().insert((q, letters), out.clone());
        out
    }

    /// The positive centre word.
    #[allow(dead_code)]
    pub fn center(&self) -> &[GenId] {
        &self.center
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{load_group_spec, GroupName};

    #[test]
    fn neighbours() {
        let g4 = load_group_spec(GroupName::G4);
        let w = g4.parse_word("s t s").unwrap();
        let n = braid_neighbors(&g4, &w, 1);
        let expect: BTreeSet<Word> = [w.clone(), g4.parse_word("t s t").unwrap()].into();
        assert_eq!(n, expect);
        let g6 = load_group_spec(GroupName::G6);
        let w = g6.parse_word("s t s t s t").unwrap();
        assert_eq!(braid_neighbors(&g6, &w, 1).len(), 2);
        let w = g6.parse_word("s t^2 s").unwrap();
        assert_eq!(braid_neighbors(&g6, &w, 1).len(), 1);
    }

    #[test]
    fn keys_identify_equal_braids() {
        let g5 = load_group_spec(GroupName::G5);
        let k = Keyer::new(&g5);
        let a = k.key(0, &g5.parse_word("s t s t").unwrap());
        assert_eq!(a, (1, vec![]));
        let b = k.key(1, &g5.parse_word("t^-1 s").unwrap());
        let c = k.key(0, &g5.parse_word("s t s^2").unwrap());
        assert_eq!(b, c);
    }
}
