import java.util.Scanner;

public class Main {
    static Scanner sc = new Scanner(System.in);

    public static boolean isPrime(long num) {
        if (num < 2) {
            return false;
        }
        // Trial division up to the square root
        long divisor = 2;
        while (divisor * divisor <= num) {
            if (num % divisor == 0) {
                return false;
            }
            divisor++;
        }
        return true;
    }

    public static long countPrimes(long n) {
        long count = 0;
        int i = 2;
        while (i < n + 1) {
            if (isPrime(i)) {
                count++;
            }
            i++;
        }

        return count;
    }

    public static void solve() {
        // Read the input
        long n = sc.nextLong();

        long result = countPrimes(n);
        // Output the answer
        System.out.println(result);
    }

    public static long collatzSteps(long num) {
        // Iterate the Collatz map until reaching one
        long steps = 0;
        while (num != 1) {
            if (num % 2 == 0) {
                num = num / 2;
            } else {
                num = 3 * num + 1;
            }
            steps++;
        }
        return steps;
    }

    public static void solve2() {
        // Read the input
        long n = sc.nextLong();

        long result = collatzSteps(n);
        // Output the answer
        System.out.println(result);
    }

    public static void main(String[] args) {
        solve();
        solve2();
    }
}
