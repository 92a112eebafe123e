use rosetta::kernel::{parse_signature, MorTerm};
use rosetta::models::{eval_mor, matrix::Matrix, ConcreteMor, Model, ModelKind};

pub const MODUS_PONENS: &str = r#"(c-inv (i "X-oY |- X-oY") "X*(X-oY) |- Y")"#;

pub const ICOMP: &str = r#"
(c
  (alpha-inv
    (cut
      (tensor (ev "X*(X-oY) |- Y") (i "Y-oZ |- Y-oZ") "(X*(X-oY))*(Y-oZ) |- Y*(Y-oZ)")
      (ev "Y*(Y-oZ) |- Z")
      "(X*(X-oY))*(Y-oZ) |- Z")
    "X*((X-oY)*(Y-oZ)) |- Z")
  "(X-oY)*(Y-oZ) |- X-oZ")
"#;

pub const TRIANGLE_1: &str =
    r#"(tensor (r (i "X*I |- X*I") "X*I |- X") (i "Y |- Y") "(X*I)*Y |- X*Y")"#;

pub const TRIANGLE_2: &str = r#"(cut
  (a (i "(X*I)*Y |- (X*I)*Y") "(X*I)*Y |- X*(I*Y)")
  (tensor (i "X |- X") (l (i "I*Y |- I*Y") "I*Y |- Y") "X*(I*Y) |- X*Y")
  "(X*I)*Y |- X*Y")"#;

/// Index of the matrix unit sending e_a to e_b inside `A -o B`, read off the
/// name of a single matrix unit.
pub fn unit_index(da: usize, db: usize, a: usize, b: usize) -> usize {
    let sig = parse_signature("mode closed-symmetric\nobj A B\ngen u : A -> B\n").unwrap();
    let mut m = Model::new("m", ModelKind::Matrix)
        .with_object("A", da)
        .with_object("B", db);
    let mut u = Matrix::zeros(db, da);
    u.set(b, a, Matrix::identity(1).get(0, 0));
    m.bind("u", ConcreteMor::Matrix(u), &sig).unwrap();
    let name = MorTerm::Name(Box::new(MorTerm::gen("u")));
    let v = match eval_mor(&m, &name, &sig).unwrap() {
        ConcreteMor::Matrix(v) => v,
        _ => unreachable!(),
    };
    let hits: Vec<usize> = (0..v.rows)
        .filter(|&r| v.get(r, 0) != Matrix::zeros(1, 1).get(0, 0))
        .collect();
    assert_eq!(hits.len(), 1);
    hits[0]
}

/// The map `(X -o Y) * (Y -o Z) -> X -o Z` taking a pair of matrix units to
/// their composite, built unit by unit.
pub fn composition_matrix(dx: usize, dy: usize, dz: usize) -> Matrix {
    let (hxy, hyz, hxz) = (dx * dy, dy * dz, dx * dz);
    let mut want = Matrix::zeros(hxz, hxy * hyz);
    let one = Matrix::identity(1).get(0, 0);
    for x in 0..dx {
        for y in 0..dy {
            for z in 0..dz {
                // E(y<-x) then E(z<-y) is E(z<-x); mismatched middles compose to zero
                let col = unit_index(dx, dy, x, y) * hyz + unit_index(dy, dz, y, z);
                want.set(unit_index(dx, dz, x, z), col, one.clone());
            }
        }
    }
    want
}
