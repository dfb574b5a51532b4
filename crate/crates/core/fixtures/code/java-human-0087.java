import java.util.*;

class Main {
  public static void main(String[] args) {
    Scanner sc = new Scanner(System.in);
    // Read the input
    int n = sc.nextInt();
    int vg0 = 0;
    for(int i = 0; i < n; i++ ) {
      int v = sc.nextInt();
      while(v > 0) {
        vg0 += v % 10;
        v = v / 10;
      }
    }
    System.out.println(vg0 );
  }
}
