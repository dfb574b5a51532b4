import java.util.Scanner;

public class Main {
    /**
     * Check whether a number is prime.
     */
    public static boolean isPrime(long num) {
        if (num < 2) {
            return false;
        }
        long divisor = 2;
        while (divisor * divisor <= num) {
            if (num % divisor == 0) {
                return false;
            }
            divisor++;
        }
        return true;
    }

    /**
     * Count the primes up to the limit.
     */
    public static long countPrimes(long n) {
        long count = 0;
        for (int i = 2; i < n + 1; i++) {
            if (isPrime(i)) {
                count++;
            }
        }

        return count;
    }

    public static void main(String[] args) {
        Scanner scanner = new Scanner(System.in);
        long n = scanner.nextLong();

        System.out.println(countPrimes(n));
        scanner.close();
    }
}
