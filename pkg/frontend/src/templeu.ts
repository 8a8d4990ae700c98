/** Default editor content: the tuition example, whose single choice makes a
 *  good first prompt. */

export const TEMPLEU_SOURCE = `// A university whose tuition depends on an answer given at enrollment time.
class TempleU {
  tuition = 0
  & (employee = true (+) employee = false)
  & comp_tuition() := if employee then tuition = 3000 else tuition = 5000
}

void main() {
  p = new TempleU;
  p.comp_tuition();
  print(p.tuition)
}
`;
