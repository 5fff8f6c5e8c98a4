#pragma once

// Golden outputs for the worked examples; regenerated with
//   valtoric examples <name> --print-golden
namespace goldens {

inline const char* kEx1 = R"GOLD(example: ex1
weights: u1=4 u2=6 u3=13
validate: ok
value(u2^2 - u1^3) = (13)
oracle orders: 4 6 13
oracle ord(u2^2 - u1^3) = 13
)GOLD";

inline const char* kEx2 = R"GOLD(example: ex2
semigroup: 4 6 13
lattice generators: (5,1,-2) (13,0,-4)
2x2 minors (up to sign): 4 6 13
saturated: yes
tame projection (p=2): generator 3 (index 13)
)GOLD";

inline const char* kRond = R"GOLD(example: rond
order row: (1, sqrt(2))
extension (y - x1): validate ok, value(y - x1) = (-1,3)
  semigroup: (1,0) (0,1) (-1,3)
extension (y + x1): validate ok, value(y + x1) = (-1,3)
  semigroup: (1,0) (0,1) (-1,3)
criterion on y^2 + 2*x1*y - x2^3: reducible
witness: overweight condition fails at step 1 on the term (-2*x1)*y of value (1,3/2) below the binomial value (0,3)
ostrowski: n=2 branches (e,f)=(1,1),(1,1) => defects 1 1 (defectless)
)GOLD";

inline const char* kArtinSchreier3 = R"GOLD(example: artin-schreier (p=3)
equation: y^3 - x^2 - x^2*y
validate: ok
chart rays: (3,2) (1,1)
strict transform: 2 + y2 + 2*y1^2*y2
uniformized: yes, boundary point y2 = 1, local coordinate y1
structure: irreducible, degree 3, index [Phi:Phi_0] = 3
ostrowski: n=3 branch (e,f)=(1,1) => defect 3
criterion: refused (abhyankar_criterion: characteristic divides deg p)
)GOLD";

inline const char* kArtinSchreier5 = R"GOLD(example: artin-schreier (p=5)
equation: y^5 - x^4 - x^4*y
validate: ok
chart rays: (5,4) (1,1)
strict transform: 4 + y2 + 4*y1^4*y2
uniformized: yes, boundary point y2 = 1, local coordinate y1
structure: irreducible, degree 5, index [Phi:Phi_0] = 5
ostrowski: n=5 branch (e,f)=(1,1) => defect 5
criterion: refused (abhyankar_criterion: characteristic divides deg p)
)GOLD";

}  // namespace goldens
