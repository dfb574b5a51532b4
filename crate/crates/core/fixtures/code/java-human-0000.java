import java.util.Scanner;

public class Main {
  static Scanner sc = new Scanner(System.in);

  public static int calc(int[] xjx) {
    int sum = 0;
    for(int i = 0; i < xjx.length; i++) {
      if(xjx[i] % 3 == 0 && xjx[i] > 0) {
        sum += xjx[i];
      }
    }
    return sum;
  }

  public static void work( ) {
    int n = sc.nextInt( );
    int[] xjx = new int[n];
    for(int i = 0; i < n; i++) {
      xjx[i] = sc.nextInt();
    }
    System.out.println(calc(xjx));
  }

  public static int fib(int n) {
    if(n < 2) {
      return n;
    }
    int qzy = 998244353;
    int[] qbq = new int[n + 2];
    qbq[1] = 1;
    for(int i = 2; i < n + 1; i++) {
      qbq[i] = (qbq[i - 1] + qbq[i - 2] ) % qzy;
    }
    return qbq[n];
  }

  public static void f() {
    int n = sc.nextInt();
    System.out.println(fib(n));
  }

  public static void main(String[] args) {
    work();
    f();
  }
}
