import java.util.Scanner;

public class Main {
    public static long calc(long[] a) {
        long s = 0;
        for (int i = 0; i < a.length; i++) {
            if (a[i] % 5 == 2) {
                s += a[i];
            }
        }
        return s;
    }

    public static void main(String[] args) {
        Scanner scanner = new Scanner(System.in);
        long n = scanner.nextLong();
        long[] a = new long[n];
        for (int i = 0; i < n; i++) {
            a[i] = scanner.nextLong();
        }
        System.out.println(calc(a));
        scanner.close();
    }
}
